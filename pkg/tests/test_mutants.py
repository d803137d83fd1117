import pytest

from superbms.mutants import ACTION_MUTANTS, BRACKET_MUTANTS, MUTANTS, killed, run_mutant


def test_registry_covers_every_formula():
    assert len(ACTION_MUTANTS) == 8
    assert len(BRACKET_MUTANTS) == 4
    assert all(m.description for m in MUTANTS.values())


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_mutant_is_killed(name):
    reports = run_mutant(name)
    assert killed(reports), [r.summary() for r in reports]


def test_unmutated_sweeps_pass():
    from superbms.linalg import Truncation
    from superbms.mutants import MUTANT_PARAMS
    from superbms.probes import sweep_module_axioms

    assert sweep_module_axioms(MUTANT_PARAMS, 2, Truncation(2, 2)).passed
