"""Verification sweeps and submodule probes.

Every sweep walks a finite grid in a fixed order and stops at the first
failure, so the reported counterexample is reproducible.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from superbms.algebra import DEFAULT, Element, Gen, Kind, Sector, SuperBMS, generators
from superbms.errors import AlphaNonzero, MissingSqrtLambda, SqrtMismatch
from superbms.linalg import SpanBasis, Truncation, vectorize
from superbms.modules import (
    ModuleParams,
    QuotientVector,
    SuperVector,
    module_for,
    psi,
    psi_inverse,
    quotient_act,
    require_transport,
    transport_h,
)
from superbms.poly import V1, Poly2, check_h_identity, d_dv1, h_m
from superbms.scalar import ONE, Scalar, as_scalar

__all__ = [
    "REPORT_VERSION",
    "ProbeReport",
    "bound_to_idx2",
    "sweep_super_jacobi",
    "sweep_module_axioms",
    "closure_span",
    "closure_probe",
    "pi_invariance_probe",
    "quotient_simplicity_probe",
    "sweep_sigma_hom",
    "sweep_psi_intertwiner",
    "sweep_h_identity",
    "polys_with_coeffs",
]

REPORT_VERSION = 1
_ZERO = Scalar._raw(0, 0, 1)


@dataclass
class ProbeReport:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed and self.counterexample is not None:
            raise ValueError("a passing report carries no counterexample")

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked, "version": REPORT_VERSION}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.data:
            out["data"] = self.data
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.checked} checked)"
        if self.counterexample:
            details = ", ".join(f"{k}={v}" for k, v in sorted(self.counterexample.items()))
            line += f"\n  counterexample: {details}"
        for k, v in sorted(self.data.items()):
            line += f"\n  {k}: {v}"
        return line


def bound_to_idx2(idx_bound) -> int:
    """``floor(2 * idx_bound)``: the cap on doubled indices for a bound on indices."""
    b = Fraction(idx_bound)
    if b < 0:
        raise ValueError("index bound must be nonnegative")
    return math.floor(2 * b)


def _sign(x: Gen, y: Gen) -> int:
    return -1 if x.odd and y.odd else 1


def _add_into(acc: dict, d: dict, c) -> None:
    for g, k in d.items():
        acc[g] = acc.get(g, _ZERO) + c * k


def _clean(d: dict) -> dict:
    return {g: c for g, c in d.items() if c}


def _elem(sector: Sector, d: dict) -> str:
    return str(Element._make(sector, d))


# -- superalgebra laws -------------------------------------------------------


def sweep_super_jacobi(sector: Sector, idx_bound, algebra: SuperBMS = DEFAULT) -> ProbeReport:
    """Supersymmetry on all generator pairs, then super-Jacobi on all triples."""
    if Fraction(idx_bound) < 1:
        raise ValueError("idx_bound must be at least 1")
    gens = generators(sector, bound_to_idx2(idx_bound))
    br = algebra.bracket_gens
    checked = 0
    name = f"super-jacobi[{sector.value}]"
    for x in gens:
        for y in gens:
            checked += 1
            lhs = br(x, y)
            rhs = {g: -_sign(x, y) * c for g, c in br(y, x).items()}
            if lhs != rhs:
                return ProbeReport(
                    name,
                    False,
                    checked,
                    {
                        "identity": "supersymmetry",
                        "x": x.label(),
                        "y": y.label(),
                        "lhs": _elem(sector, lhs),
                        "rhs": _elem(sector, rhs),
                    },
                )

    def br_left(x, d):
        acc: dict = {}
        for g, c in d.items():
            _add_into(acc, br(x, g), c)
        return acc

    def br_right(d, z):
        acc: dict = {}
        for g, c in d.items():
            _add_into(acc, br(g, z), c)
        return acc

    for x in gens:
        for y in gens:
            xy = br(x, y)
            sgn = _sign(x, y)
            for z in gens:
                checked += 1
                lhs = _clean(br_left(x, br(y, z)))
                rhs = br_right(xy, z)
                _add_into(rhs, br_left(y, br(x, z)), sgn)
                rhs = _clean(rhs)
                if lhs != rhs:
                    residual = dict(lhs)
                    _add_into(residual, rhs, -1)
                    return ProbeReport(
                        name,
                        False,
                        checked,
                        {
                            "identity": "jacobi",
                            "x": x.label(),
                            "y": y.label(),
                            "z": z.label(),
                            "lhs": _elem(sector, lhs),
                            "rhs": _elem(sector, rhs),
                            "residual": _elem(sector, _clean(residual)),
                        },
                    )
    return ProbeReport(name, True, checked, data={"generators": len(gens)})


# -- module axioms -----------------------------------------------------------


def _combine_zero(items) -> bool:
    return not Poly2.combine(items)


def sweep_module_axioms(
    params: ModuleParams,
    idx_bound,
    tr: Truncation,
    algebra: SuperBMS = DEFAULT,
    module=None,
) -> ProbeReport:
    """``x(yv) - (-1)^{|x||y|} y(xv) == [x,y] v`` on the generator/monomial grid.

    ``module`` overrides the action (used to inject faults).
    """
    kind = params.sector
    if kind is Sector.NS and params.sqrt_lambda is None:
        raise MissingSqrtLambda("the Neveu-Schwarz module needs sqrt_lambda")
    mod = module if module is not None else module_for(params)
    gens = generators(kind, bound_to_idx2(idx_bound))
    basis = tr.basis_vectors(kind)
    name = f"module-axioms[{kind.value}]"
    checked = 0
    # single images g.v for every generator and basis vector
    single = [
        {g: SuperVector(kind, *(Poly2.combine(items) for items in mod.act_gen(g, v))) for g in gens}
        for v in basis
    ]
    for x in gens:
        for y in gens:
            sgn = Scalar(-_sign(x, y))
            bxy = algebra.bracket_gens(x, y)
            for v, img in zip(basis, single):
                checked += 1
                a_e, a_o = mod.act_gen(x, img[y])
                b_e, b_o = mod.act_gen(y, img[x], sgn)
                c_e: list = []
                c_o: list = []
                for g, c in bxy.items():
                    e, o = mod.act_gen(g, v, -c)
                    c_e += e
                    c_o += o
                if _combine_zero(a_e + b_e + c_e) and _combine_zero(a_o + b_o + c_o):
                    continue
                lhs = SuperVector(kind, Poly2.combine(a_e + b_e), Poly2.combine(a_o + b_o))
                rhs = mod.act(Element._make(kind, bxy), v)
                return ProbeReport(
                    name,
                    False,
                    checked,
                    {
                        "x": x.label(),
                        "y": y.label(),
                        "v": v.format(),
                        "lhs": lhs.format(),
                        "rhs": rhs.format(),
                        "residual": (lhs - rhs).format(),
                    },
                )
    return ProbeReport(name, True, checked, data={"generators": len(gens), "basis": len(basis)})


# -- closure and invariance --------------------------------------------------


def closure_span(params: ModuleParams, seed: SuperVector, idx_bound, tr: Truncation, module=None):
    """Span of everything reachable from ``seed`` inside the window.

    Images that leave the window are discarded, so the result is a lower bound
    for the intersection of the generated submodule with the window.
    Returns ``(SpanBasis, applications)``.
    """
    if not seed:
        raise ValueError("closure seed must be nonzero")
    mod = module if module is not None else module_for(params)
    gens = generators(params.sector, bound_to_idx2(idx_bound), kinds=(Kind.L, Kind.W, Kind.G))
    span = SpanBasis(tr.dim)
    coords, overflow = vectorize(seed, tr)
    if overflow:
        raise ValueError("closure seed lies outside the truncation window")
    span.insert(coords)
    queue = [seed]
    applications = 0
    while queue:
        w = queue.pop(0)
        for g in gens:
            applications += 1
            e, o = mod.act_gen(g, w)
            img = SuperVector(params.sector, Poly2.combine(e), Poly2.combine(o))
            if not img:
                continue
            coords, overflow = vectorize(img, tr)
            if overflow:
                continue
            if span.insert(coords):
                queue.append(img)
    return span, applications


def closure_probe(params: ModuleParams, seed: SuperVector, idx_bound, tr: Truncation, module=None) -> ProbeReport:
    """Passes when the closure of ``seed`` fills the whole window."""
    span, applications = closure_span(params, seed, idx_bound, tr, module)
    full = tr.dim
    return ProbeReport(
        f"closure[{params.sector.value}]",
        span.rank == full,
        applications,
        data={"dimension": span.rank, "full_dimension": full},
    )


def _pi_basis(tr: Truncation, i: int, odd_degree: int):
    for odd, (a, b) in tr.basis:
        if a >= (odd_degree if odd else i):
            yield odd, (a, b)


def pi_invariance_probe(
    params: ModuleParams, i: int, idx_bound, tr: Truncation, odd_degree: int = 0, module=None
) -> ProbeReport:
    """Check that ``u^i C[u,s] + t u^odd_degree C[u,s]`` is invariant.

    With ``odd_degree = 0`` the odd part is all of ``t C[u,s]``.  Every generator
    image of every window monomial of the subspace is tested (images may leave
    the window; only divisibility is examined).
    """
    if params.sector is not Sector.R:
        raise ValueError("the invariance probe runs on the Ramond module")
    if params.alpha:
        raise AlphaNonzero(f"alpha = {params.alpha}; the subspaces are invariant only for alpha = 0")
    if i < 1 or odd_degree < 0:
        raise ValueError("i must be positive and odd_degree nonnegative")
    mod = module if module is not None else module_for(params)
    gens = generators(Sector.R, bound_to_idx2(idx_bound))
    name = f"pi-invariance[i={i},odd_degree={odd_degree}]"
    checked = 0
    for g in gens:
        for odd, mono in _pi_basis(tr, i, odd_degree):
            checked += 1
            to_odd, img = mod.image(g, odd, mono)
            need = odd_degree if to_odd else i
            if img.divisible_by_v1(need):
                continue
            v = SuperVector.monomial(Sector.R, odd, *mono)
            out = SuperVector(Sector.R, img, Poly2()) if not to_odd else SuperVector(Sector.R, Poly2(), img)
            return ProbeReport(
                name,
                False,
                checked,
                {"x": g.label(), "v": v.format(), "image": out.format(), "required_u_power": need},
            )
    return ProbeReport(name, True, checked)


def quotient_simplicity_probe(params: ModuleParams, i: int, idx_bound: int, s_deg: int) -> ProbeReport:
    """Simplicity evidence for the quotient at level ``i``.

    If ``h(0) != i`` the closure of the class of ``u^i`` under ``L_m``
    (``|m| <= idx_bound``) must reach every ``s^k`` with ``k <= s_deg``.  If
    ``h(0) == i`` the subspace ``s C[s]`` must be invariant, which exhibits a
    proper nonzero submodule.
    """
    if i < 0:
        raise ValueError("i must be nonnegative")
    shift = params.h.coeff(0, 0) - i
    ms = range(-idx_bound, idx_bound + 1)
    elems = [Element.gen(Kind.L, 2 * m, Sector.R) for m in ms]
    if shift:
        name = f"quotient-closure[i={i}]"
        span = SpanBasis(s_deg + 1)
        seed = QuotientVector(i)
        span.insert(_s_coords(seed.g, s_deg)[0])
        queue = [seed]
        checked = 0
        while queue:
            w = queue.pop(0)
            for x in elems:
                checked += 1
                img = quotient_act(params, x, w)
                coords, overflow = _s_coords(img.g, s_deg)
                if overflow or not img.g:
                    continue
                if span.insert(coords):
                    queue.append(img)
        data = {"dimension": span.rank, "full_dimension": s_deg + 1, "h0_minus_i": str(shift)}
        return ProbeReport(name, span.rank == s_deg + 1, checked, data=data)
    name = f"quotient-invariant[i={i}]"
    checked = 0
    for k in range(1, s_deg + 1):
        v = QuotientVector(i, Poly2.monomial(0, k))
        for x in elems:
            checked += 1
            img = quotient_act(params, x, v)
            if img.g.coeff(0, 0):
                return ProbeReport(
                    name, False, checked, {"x": str(x), "v": str(v), "image": str(img)}
                )
    return ProbeReport(name, True, checked, data={"h0_minus_i": "0"})


def _s_coords(g: Poly2, s_deg: int):
    coords = [_ZERO] * (s_deg + 1)
    overflow = False
    for (_, e2), c in g.terms.items():
        if e2 > s_deg:
            overflow = True
        else:
            coords[e2] = c
    return coords, overflow


# -- the embedding and the intertwiner --------------------------------------


def sweep_sigma_hom(idx_bound, algebra: SuperBMS = DEFAULT) -> ProbeReport:
    """``sigma([x,y]) == [sigma x, sigma y]`` on NS generator pairs, plus injectivity."""
    gens = generators(Sector.NS, bound_to_idx2(idx_bound))
    name = "sigma-homomorphism"
    elems = {g: Element._make(Sector.NS, {g: ONE}) for g in gens}
    images = {g: algebra.sigma(e) for g, e in elems.items()}
    checked = 0
    for x in gens:
        for y in gens:
            checked += 1
            lhs = algebra.sigma(algebra.bracket(elems[x], elems[y]))
            rhs = algebra.bracket(images[x], images[y])
            if lhs != rhs:
                return ProbeReport(
                    name,
                    False,
                    checked,
                    {
                        "x": x.label(),
                        "y": y.label(),
                        "lhs": str(lhs),
                        "rhs": str(rhs),
                        "residual": str(lhs - rhs),
                    },
                )
    support = sorted({g for img in images.values() for g in img.terms})
    pos = {g: k for k, g in enumerate(support)}
    span = SpanBasis(len(support))
    for g in gens:
        checked += 1
        coords = [_ZERO] * len(support)
        for h, c in images[g].items():
            coords[pos[h]] = c
        if not span.insert(coords):
            return ProbeReport(name, False, checked, {"identity": "injectivity", "x": g.label()})
    return ProbeReport(name, True, checked, data={"generators": len(gens), "rank": span.rank})


def sweep_psi_intertwiner(
    h: Poly2,
    alpha,
    lam,
    sqrt_lambda,
    idx_bound,
    tr: Truncation,
    transport_bound: int = 4,
    algebra: SuperBMS = DEFAULT,
) -> ProbeReport:
    """``psi(x.v) == sigma(x).psi(v)`` from the NS module with ``g`` to the Ramond one with ``h``."""
    lam, alpha, root = as_scalar(lam), as_scalar(alpha), as_scalar(sqrt_lambda)
    if root * root != lam:
        raise SqrtMismatch(f"({root})^2 != {lam}")
    g = transport_h(h, alpha)
    require_transport(h, g, alpha, transport_bound)
    p_ns = ModuleParams(lam, alpha, g, Sector.NS, root)
    p_r = ModuleParams(root, alpha, h, Sector.R)
    ns, ram = module_for(p_ns), module_for(p_r)
    gens = generators(Sector.NS, bound_to_idx2(idx_bound))
    name = "psi-intertwiner"
    checked = 0
    sig = {x: algebra.sigma(Element._make(Sector.NS, {x: ONE})) for x in gens}
    for x in gens:
        for v in tr.basis_vectors(Sector.NS):
            checked += 1
            lhs = psi(p_ns, ns.act(Element._make(Sector.NS, {x: ONE}), v))
            rhs = ram.act(sig[x], psi(p_ns, v))
            if lhs != rhs:
                return ProbeReport(
                    name,
                    False,
                    checked,
                    {"x": x.label(), "v": v.format(), "lhs": lhs.format(), "rhs": rhs.format()},
                )
    for v in tr.basis_vectors(Sector.NS):
        checked += 1
        if psi_inverse(p_ns, psi(p_ns, v)) != v:
            return ProbeReport(name, False, checked, {"identity": "round-trip", "v": v.format()})
    for w in tr.basis_vectors(Sector.R):
        checked += 1
        if psi(p_ns, psi_inverse(p_ns, w)) != w:
            return ProbeReport(name, False, checked, {"identity": "round-trip", "v": w.format()})
    return ProbeReport(name, True, checked, data={"g": g.format(("t", "s"))})


# -- the h_m identity --------------------------------------------------------


def polys_with_coeffs(max_degree: int, coeffs) -> list[Poly2]:
    """Every polynomial of degree <= max_degree with coefficients drawn from ``coeffs``."""
    coeffs = [as_scalar(c) for c in coeffs]
    out = []
    for combo in itertools.product(coeffs, repeat=max_degree + 1):
        out.append(Poly2({(k, 0): c for k, c in enumerate(combo) if c}))
    return out


def sweep_h_identity(hs, alphas, m_range) -> ProbeReport:
    """The identity for ``h_m`` over every ``(h, alpha, m, n)`` in the grid.

    For each ``(h, alpha)`` the family ``h_k`` is computed once per ``k``; the
    identity for one pair ``(m, n)`` is then a single linear combination.
    """
    ms = list(m_range)
    ks = sorted({k for m in ms for n in ms for k in (m, n, m + n)})
    checked = 0
    for alpha in alphas:
        alpha = as_scalar(alpha)
        # coefficients of fam[n], fam[m], tder[m], der[m], tder[n], der[n], fam[m+n]
        weights = [
            (m, n, (Scalar._raw(n, 0, 1), Scalar._raw(-m, 0, 1), Scalar._raw(n, 0, 1), -n * n * alpha,
                    Scalar._raw(-m, 0, 1), m * m * alpha, Scalar._raw(m - n, 0, 1)))
            for m in ms
            for n in ms
        ]
        for h in hs:
            fam = {k: h_m(h, alpha, k) for k in ks}
            der = {k: d_dv1(fam[k]) for k in ks}
            tder = {k: V1 * der[k] for k in ks}
            for m, n, w in weights:
                checked += 1
                resid = Poly2.combine(
                    zip(w, (fam[n], fam[m], tder[m], der[m], tder[n], der[n], fam[m + n]))
                )
                if resid:
                    res = check_h_identity(h, alpha, m, n)
                    return ProbeReport(
                        "h-identity",
                        False,
                        checked,
                        {
                            "h": h.format(("t", "s")),
                            "alpha": str(alpha),
                            "m": m,
                            "n": n,
                            "lhs": res.lhs.format(("t", "s")),
                            "rhs": res.rhs.format(("t", "s")),
                            "residual": res.residual.format(("t", "s")),
                        },
                    )
    return ProbeReport("h-identity", True, checked)
