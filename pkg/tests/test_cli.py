import io
import json
import subprocess
import sys

import pytest

from superbms.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bracket_text():
    assert call("bracket", "L[2]", "L[-2]", "--sector", "R") == (0, "-4*L[0] + 1/2*C1\n", "")


def test_bracket_json():
    code, out, _ = call("bracket", "L[2]", "L[-2]", "--sector", "R", "--json")
    assert code == 0
    assert json.loads(out)["data"]["result"] == "-4*L[0] + 1/2*C1"


def test_act_example():
    args = ("act", "G[0]", "even: 0 ; odd: 1", "--sector", "R", "--lambda", "1", "--alpha", "1", "--h", "0")
    assert call(*args)[:2] == (0, "even: u ; odd: 0\n")


def test_verify_jacobi_json():
    code, out, _ = call("verify", "jacobi", "--sector", "NS", "--bound", "4", "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"] is True and report["checked"] > 0 and report["version"] == 1


def test_failure_exits_one():
    code, out, _ = call("verify", "sigma", "--bound", "2", "--central", "uniform", "--json")
    assert code == 1
    assert "counterexample" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ("bracket", "L[2]", "G[1/2]", "--sector", "R"),
        ("bracket", "L[2"),
        ("act", "L[1]", "even: y", "--lambda", "1"),
        ("act", "L[1]", "even: 1"),
        ("act", "L[1]", "even: 1", "--lambda", "0"),
        ("frobnicate",),
        ("verify", "jacobi", "--bound", "0"),
        ("probe", "pi", "--lambda", "1", "--alpha", "1"),
    ],
)
def test_usage_errors_exit_two(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_other_verbs():
    assert call("sigma", "G[1/2]")[1] == "1/2*sqrt2*G[1]\n"
    assert call("psi", "odd: 1", "--lambda", "4", "--sqrt-lambda", "2")[1] == "even: 0 ; odd: sqrt2\n"
    code, out, _ = call("extract", "--lambda", "3", "--alpha", "1", "--h", "t^2", "--json")
    assert code == 0 and json.loads(out)["data"] == {"alpha": "1", "h": "t^2", "lambda": "3"}
    assert call("verify", "h-identity", "--h", "t^3", "--alpha", "2")[0] == 0
    assert call("verify", "axioms", "--lambda", "2", "--alpha", "1", "--h", "t", "--bound", "1")[0] == 0
    psi_args = ("verify", "psi", "--lambda", "4", "--sqrt-lambda", "2", "--h", "t", "--alpha", "1")
    assert call(*psi_args)[0] == 0
    assert call("probe", "closure", "--lambda", "1", "--alpha", "1")[0] == 0
    assert call("probe", "pi", "--lambda", "1", "--i", "2", "--odd-degree", "1")[0] == 0
    assert call("probe", "quotient", "--lambda", "1", "--h", "2", "--i", "0")[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superbms", "bracket", "L[2]", "L[-2]", "--sector", "R", "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["data"]["result"] == "-4*L[0] + 1/2*C1"
