"""Command-line interface: ``superbms <verb> ...``.

Exit codes: 0 on success, 1 when a verification finds a counterexample,
2 on usage or parse errors.  ``--json`` prints one JSON object with sorted keys.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from superbms.algebra import Sector, SuperBMS
from superbms.errors import InconsistentOracle, SuperBMSError, TransportConditionFailed
from superbms.grammar import parse_algebra_expr, parse_h, parse_scalar, parse_vector_expr
from superbms.linalg import Truncation
from superbms.modules import ModuleParams, act_ns, act_ramond, extract_params, module_for, psi
from superbms.poly import Poly2
from superbms.probes import (
    ProbeReport,
    closure_probe,
    pi_invariance_probe,
    quotient_simplicity_probe,
    sweep_h_identity,
    sweep_module_axioms,
    sweep_psi_intertwiner,
    sweep_sigma_hom,
    sweep_super_jacobi,
)

__all__ = ["build_parser", "run", "main"]


class UsageError(Exception):
    pass


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except (SuperBMSError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _h(text: str) -> Poly2:
    try:
        return parse_h(text)
    except SuperBMSError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sector(text: str) -> Sector:
    try:
        return Sector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bound(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid bound {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument(
        "--central",
        choices=["consistent", "uniform"],
        default="consistent",
        help="central-term convention of the bracket (default: consistent)",
    )

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--lambda", dest="lam", type=_scalar, default=None, help="nonzero scalar")
    params.add_argument("--alpha", type=_scalar, default=None)
    params.add_argument("--h", type=_h, default=None, help='polynomial in t, e.g. "t^2+1"')
    params.add_argument("--sqrt-lambda", type=_scalar, default=None)

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--bound", type=_bound, default=Fraction(2), help="index bound (default 2)")
    window.add_argument(
        "--caps", type=int, nargs=2, default=(2, 2), metavar=("E1", "E2"), help="monomial caps (default 2 2)"
    )

    parser = argparse.ArgumentParser(prog="superbms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bracket", parents=[common], help="superbracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--sector", type=_sector)

    p = sub.add_parser("act", parents=[common, params], help="act with an element on a vector")
    p.add_argument("element")
    p.add_argument("vector")
    p.add_argument("--sector", type=_sector, default=Sector.R)

    p = sub.add_parser("psi", parents=[common, params], help="map a Neveu-Schwarz vector to the Ramond module")
    p.add_argument("vector")

    p = sub.add_parser("sigma", parents=[common], help="embed a Neveu-Schwarz element into the Ramond algebra")
    p.add_argument("element")

    p = sub.add_parser("extract", parents=[common, params], help="recover parameters from the action")
    p.add_argument("--sector", type=_sector, default=Sector.R)
    p.add_argument("--degree-bound", type=int, default=None)

    p = sub.add_parser("verify", parents=[common, params, window], help="run a verification sweep")
    p.add_argument("what", choices=["jacobi", "axioms", "sigma", "psi", "h-identity"])
    p.add_argument("--sector", type=_sector, default=Sector.R)
    p.add_argument("--m-bound", type=int, default=4, help="|m|, |n| range for h-identity (default 4)")

    p = sub.add_parser("probe", parents=[common, params, window], help="run a submodule probe")
    p.add_argument("what", choices=["closure", "pi", "quotient"])
    p.add_argument("--sector", type=_sector, default=Sector.R)
    p.add_argument("--seed", default="even: 1 ; odd: 0", help="closure seed vector")
    p.add_argument("--i", type=int, default=1, help="submodule level for pi/quotient")
    p.add_argument("--odd-degree", type=int, default=0, help="u-power required of the odd part (pi)")
    p.add_argument("--s-deg", type=int, default=4, help="s-degree window for quotient")
    return parser


def _params(args, sector: Sector) -> ModuleParams:
    lam = args.lam
    if lam is None:
        raise UsageError("--lambda is required")
    alpha = args.alpha if args.alpha is not None else parse_scalar("0")
    h = args.h if args.h is not None else Poly2()
    try:
        return ModuleParams(lam, alpha, h, sector, args.sqrt_lambda)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _result(name: str, text: str) -> ProbeReport:
    return ProbeReport(name, True, 1, data={"result": text})


def _dispatch(args) -> ProbeReport:
    algebra = SuperBMS(args.central)
    verb = args.verb
    if verb == "bracket":
        x = parse_algebra_expr(args.x, args.sector)
        y = parse_algebra_expr(args.y, args.sector or x.sector)
        return _result("bracket", str(algebra.bracket(x, y)))
    if verb == "sigma":
        x = parse_algebra_expr(args.element, Sector.NS)
        return _result("sigma", str(algebra.sigma(x)))
    if verb == "act":
        p = _params(args, args.sector)
        x = parse_algebra_expr(args.element, args.sector)
        v = parse_vector_expr(args.vector, args.sector)
        action = act_ramond if args.sector is Sector.R else act_ns
        return _result("act", action(p, x, v).format())
    if verb == "psi":
        p = _params(args, Sector.NS)
        v = parse_vector_expr(args.vector, Sector.NS)
        return _result("psi", psi(p, v).format())
    if verb == "extract":
        return _extract(args)
    if verb == "verify":
        return _verify(args, algebra)
    return _probe(args)


def _extract(args) -> ProbeReport:
    p = _params(args, args.sector)
    mod = module_for(p)
    try:
        lam, alpha, h = extract_params(mod.act, args.sector, args.degree_bound)
    except InconsistentOracle as exc:
        return ProbeReport("extract", False, 1, {"error": str(exc)})
    found = {"lambda": str(lam), "alpha": str(alpha), "h": h.format(("t", "s"))}
    ok = lam == p.lam and alpha == p.alpha and h == p.h
    if ok:
        return ProbeReport("extract", True, 1, data=found)
    return ProbeReport("extract", False, 1, found)


def _verify(args, algebra: SuperBMS) -> ProbeReport:
    tr = Truncation(*args.caps)
    what = args.what
    if what == "jacobi":
        if args.bound < 1:
            raise UsageError("--bound must be at least 1")
        return sweep_super_jacobi(args.sector, args.bound, algebra)
    if what == "sigma":
        return sweep_sigma_hom(args.bound, algebra)
    if what == "axioms":
        return sweep_module_axioms(_params(args, args.sector), args.bound, tr, algebra)
    if what == "psi":
        p = _params(args, Sector.NS)
        if p.sqrt_lambda is None:
            raise UsageError("--sqrt-lambda is required")
        try:
            return sweep_psi_intertwiner(p.h, p.alpha, p.lam, p.sqrt_lambda, args.bound, tr, algebra=algebra)
        except TransportConditionFailed as exc:
            return ProbeReport("psi-intertwiner", False, 1, {"transport_condition_fails_at_m": exc.m})
    h = args.h if args.h is not None else Poly2()
    alpha = args.alpha if args.alpha is not None else parse_scalar("0")
    return sweep_h_identity([h], [alpha], range(-args.m_bound, args.m_bound + 1))


def _probe(args) -> ProbeReport:
    tr = Truncation(*args.caps)
    what = args.what
    p = _params(args, Sector.R if what != "closure" else args.sector)
    if what == "closure":
        seed = parse_vector_expr(args.seed, args.sector)
        if not seed:
            raise UsageError("closure seed must be nonzero")
        return closure_probe(p, seed, args.bound, tr)
    if what == "pi":
        return pi_invariance_probe(p, args.i, args.bound, tr, odd_degree=args.odd_degree)
    if args.i < 0:
        raise UsageError("--i must be nonnegative")
    if args.bound.denominator != 1:
        raise UsageError("quotient probe needs an integer --bound")
    return quotient_simplicity_probe(p, args.i, int(args.bound), args.s_deg)


def _emit(report: ProbeReport, as_json: bool, out) -> None:
    if as_json:
        print(report.to_json(), file=out)
    elif report.data.get("result") is not None and report.passed and len(report.data) == 1:
        print(report.data["result"], file=out)
    else:
        print(report.summary(), file=out)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    """Execute one command; return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = _dispatch(args)
    except (UsageError, SuperBMSError, ValueError, ZeroDivisionError) as exc:
        print(f"superbms: error: {exc}", file=err)
        return 2
    _emit(report, args.json, out)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())
