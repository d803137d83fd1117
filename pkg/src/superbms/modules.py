"""The modules Omega(lambda, alpha, h) over both sectors.

Vectors are pairs of :class:`~superbms.poly.Poly2` (even part, odd part).

* Ramond: the even part is ``f(u, s)`` with ``u = t^2``; the odd part stores
  the cofactor ``f`` of ``t * f(u, s)``.  Both are polynomials in ``(u, s)``.
* Neveu-Schwarz: the even part is ``f(t, s)``, the odd part ``k(y, x)``.

In both cases ``v1`` is ``u``/``t``/``y`` and ``v2`` is ``s``/``x``.  Written
per stored polynomial the two actions differ only in the power of lambda that
the odd generators carry, so one base class serves both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from superbms.algebra import DEFAULT, Element, Gen, Kind, Sector, SuperBMS, G, L, W
from superbms.errors import (
    InconsistentOracle,
    KindMismatch,
    MissingSqrtLambda,
    SectorMismatch,
    SqrtMismatch,
    TransportConditionFailed,
)
from superbms.poly import ONE_POLY, V1, V2, ZERO_POLY, Poly2, h_m
from superbms.scalar import HALF, ONE, SQRT2, Scalar, as_scalar

__all__ = [
    "ModuleParams",
    "SuperVector",
    "QuotientVector",
    "SuperModule",
    "RamondModule",
    "NSModule",
    "module_for",
    "act",
    "act_ramond",
    "act_ns",
    "act_restricted",
    "psi",
    "psi_inverse",
    "transport_h",
    "check_transport",
    "quotient_act",
    "project_to_quotient",
    "extract_params",
]

_ZERO = Scalar._raw(0, 0, 1)
_SQRT2_HALF = SQRT2 * HALF

VAR_NAMES = {
    Sector.R: (("u", "s"), ("u", "s")),
    Sector.NS: (("t", "s"), ("y", "x")),
}


@dataclass(frozen=True)
class ModuleParams:
    """Parameters ``(lambda, alpha, h)`` of one module, plus an optional sqrt(lambda)."""

    lam: Scalar
    alpha: Scalar
    h: Poly2
    sector: Sector = Sector.R
    sqrt_lambda: Scalar | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", as_scalar(self.lam))
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        if not isinstance(self.h, Poly2):
            object.__setattr__(self, "h", Poly2.const(self.h))
        if not self.lam:
            raise ValueError("lambda must be nonzero")
        if not self.h.is_univariate():
            raise ValueError("h must be a polynomial in one variable")
        if self.sqrt_lambda is not None:
            root = as_scalar(self.sqrt_lambda)
            object.__setattr__(self, "sqrt_lambda", root)
            if root * root != self.lam:
                raise SqrtMismatch(f"({root})^2 != {self.lam}")


class SuperVector:
    """An element of a module: ``(even, odd)`` polynomials tagged with the sector."""

    __slots__ = ("kind", "even", "odd")

    def __init__(self, kind: Sector, even: Poly2 = ZERO_POLY, odd: Poly2 = ZERO_POLY):
        self.kind = kind
        self.even = even if isinstance(even, Poly2) else Poly2.const(even)
        self.odd = odd if isinstance(odd, Poly2) else Poly2.const(odd)

    @classmethod
    def one(cls, kind: Sector) -> "SuperVector":
        """The cyclic vector ``1`` in the even part."""
        return cls(kind, ONE_POLY, ZERO_POLY)

    @classmethod
    def one_odd(cls, kind: Sector) -> "SuperVector":
        """``t * 1`` (Ramond) or ``1`` in the odd part (Neveu-Schwarz)."""
        return cls(kind, ZERO_POLY, ONE_POLY)

    @classmethod
    def monomial(cls, kind: Sector, odd: bool, e1: int, e2: int) -> "SuperVector":
        p = Poly2._make({(e1, e2): (1, 0)}, 1, True)
        return cls(kind, ZERO_POLY, p) if odd else cls(kind, p, ZERO_POLY)

    def _check(self, other: "SuperVector") -> None:
        if self.kind is not other.kind:
            raise KindMismatch(f"{self.kind.value} vector combined with {other.kind.value} vector")

    def __add__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        self._check(other)
        return SuperVector(self.kind, self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        self._check(other)
        return SuperVector(self.kind, self.even - other.even, self.odd - other.odd)

    def __neg__(self):
        return SuperVector(self.kind, -self.even, -self.odd)

    def __mul__(self, c):
        try:
            s = as_scalar(c)
        except TypeError:
            return NotImplemented
        return SuperVector(self.kind, self.even.scale(s), self.odd.scale(s))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.even) or bool(self.odd)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if isinstance(other, SuperVector):
            return self.kind is other.kind and self.even == other.even and self.odd == other.odd
        if isinstance(other, int) and other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.even, self.odd))

    def format(self) -> str:
        even_names, odd_names = VAR_NAMES[self.kind]
        return f"even: {self.even.format(even_names)} ; odd: {self.odd.format(odd_names)}"

    __str__ = format

    def __repr__(self):
        return f"SuperVector({self.kind.value}, {self.format()!r})"


@dataclass(frozen=True)
class QuotientVector:
    """The class of ``u^i * g(s)`` in the quotient of the ``i``-th submodule.

    ``g`` is stored as a :class:`Poly2` in ``v2`` only.
    """

    i: int
    g: Poly2 = field(default=ONE_POLY)

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("quotient index must be nonnegative")
        if any(e1 for e1, _ in self.g.monomials()):
            raise ValueError("quotient representatives are polynomials in s alone")

    def __add__(self, other):
        if not isinstance(other, QuotientVector) or other.i != self.i:
            return NotImplemented
        return QuotientVector(self.i, self.g + other.g)

    def __mul__(self, c):
        return QuotientVector(self.i, self.g * c)

    __rmul__ = __mul__

    def __str__(self):
        return f"[u^{self.i}*({self.g.format(('u', 's'))})]"


# -- the actions -------------------------------------------------------------


class SuperModule:
    """Action of generators on ``(even, odd)`` polynomial pairs.

    Eight formula methods carry the mathematics; each maps one stored
    polynomial to the stored polynomial of the target part.  Images of
    monomials are cached per instance, so repeated sweeps stay cheap.
    """

    sector: Sector

    def __init__(self, params: ModuleParams):
        if params.sector is not self.sector:
            raise SectorMismatch(f"{params.sector.value} parameters for a {self.sector.value} module")
        self.params = params
        self.lam = params.lam
        self.alpha = params.alpha
        self.h = params.h
        self._hm: dict[int, Poly2] = {}
        self._pow: dict[int, Scalar] = {}
        self._img: dict = {}

    # -- helpers -----------------------------------------------------------

    def hm(self, m: int) -> Poly2:
        p = self._hm.get(m)
        if p is None:
            p = self._hm[m] = h_m(self.h, self.alpha, m)
        return p

    def lam_half_pow(self, e2: int) -> Scalar:
        """``lambda ** (e2 / 2)``; odd ``e2`` needs the supplied square root."""
        c = self._pow.get(e2)
        if c is None:
            if e2 % 2 == 0:
                c = self.lam ** (e2 // 2)
            else:
                if self.params.sqrt_lambda is None:
                    raise MissingSqrtLambda("half-integer power of lambda needs --sqrt-lambda")
                c = self.params.sqrt_lambda**e2
            self._pow[e2] = c
        return c

    def _linear(self, m2: int) -> Poly2:
        """``v1 - (m2/2) * alpha``."""
        return V1 - self.alpha * Fraction(m2, 2)

    def _l_core(self, m2: int, f: Poly2, extra: Fraction) -> Poly2:
        m = m2 // 2
        g = f.shift_v2(m)
        mult = V2 + self.hm(m) + (-extra if extra else 0)
        out = mult * g
        if m:
            out = out - (self._linear(m2) * g.d_dv1()).scale(as_scalar(m))
        return out.scale(self.lam_half_pow(m2))

    # -- the eight formulas ------------------------------------------------

    def L_even(self, m2: int, f: Poly2) -> Poly2:
        return self._l_core(m2, f, Fraction(0))

    def L_odd(self, m2: int, f: Poly2) -> Poly2:
        return self._l_core(m2, f, Fraction(m2, 4))

    def W_even(self, m2: int, f: Poly2) -> Poly2:
        return (self._linear(m2) * f.shift_v2(m2 // 2)).scale(self.lam_half_pow(m2))

    def W_odd(self, m2: int, f: Poly2) -> Poly2:
        return (self._linear(m2) * f.shift_v2(m2 // 2)).scale(self.lam_half_pow(m2))

    def G_even(self, r2: int, f: Poly2) -> Poly2:
        return f.shift_v2(Fraction(r2, 2)).scale(self.lam_half_pow(self.g_even_pow(r2)))

    def G_odd(self, r2: int, f: Poly2) -> Poly2:
        lin = V1 - self.alpha * r2
        return (lin * f.shift_v2(Fraction(r2, 2))).scale(self.lam_half_pow(self.g_odd_pow(r2)))

    def C_even(self, idx2: int, f: Poly2) -> Poly2:
        return ZERO_POLY

    def C_odd(self, idx2: int, f: Poly2) -> Poly2:
        return ZERO_POLY

    def g_even_pow(self, r2: int) -> int:
        raise NotImplementedError

    def g_odd_pow(self, r2: int) -> int:
        raise NotImplementedError

    # -- dispatch ----------------------------------------------------------

    def image(self, g: Gen, odd: bool, mono) -> tuple[bool, Poly2]:
        """Image of a basis monomial: ``(lands_in_odd_part, polynomial)``."""
        key = (g, odd, mono)
        hit = self._img.get(key)
        if hit is not None:
            return hit
        f = Poly2._make({mono: (1, 0)}, 1, True)
        k = g.kind
        if k is Kind.L:
            res = (odd, self.L_odd(g.idx2, f) if odd else self.L_even(g.idx2, f))
        elif k is Kind.W:
            res = (odd, self.W_odd(g.idx2, f) if odd else self.W_even(g.idx2, f))
        elif k is Kind.G:
            res = (not odd, self.G_odd(g.idx2, f) if odd else self.G_even(g.idx2, f))
        else:
            res = (odd, self.C_odd(g.idx2, f) if odd else self.C_even(g.idx2, f))
        self._img[key] = res
        return res

    def act_gen(self, g: Gen, v: SuperVector, coeff: Scalar = ONE) -> tuple[list, list]:
        even_items: list = []
        odd_items: list = []
        for odd, part in ((False, v.even), (True, v.odd)):
            if not part:
                continue
            for mono, c in part.terms.items():
                to_odd, img = self.image(g, odd, mono)
                if img:
                    (odd_items if to_odd else even_items).append((c * coeff, img))
        return even_items, odd_items

    def act(self, x: Element, v: SuperVector) -> SuperVector:
        if x.sector is not self.sector:
            raise SectorMismatch(f"{x.sector.value} element acting on a {self.sector.value} module")
        if v.kind is not self.sector:
            raise KindMismatch(f"{v.kind.value} vector given to a {self.sector.value} module")
        even_items: list = []
        odd_items: list = []
        for g, c in x.items():
            e, o = self.act_gen(g, v, c)
            even_items.extend(e)
            odd_items.extend(o)
        return SuperVector(self.sector, Poly2.combine(even_items), Poly2.combine(odd_items))

    def __call__(self, x: Element, v: SuperVector) -> SuperVector:
        return self.act(x, v)


class RamondModule(SuperModule):
    """``C[t^2, s] + t C[t^2, s]`` over the Ramond superalgebra."""

    sector = Sector.R

    def g_even_pow(self, r2: int) -> int:
        return r2

    def g_odd_pow(self, r2: int) -> int:
        return r2


class NSModule(SuperModule):
    """``C[t, s] + C[y, x]`` over the Neveu-Schwarz superalgebra."""

    sector = Sector.NS

    def g_even_pow(self, r2: int) -> int:
        return r2 - 1

    def g_odd_pow(self, r2: int) -> int:
        return r2 + 1


@lru_cache(maxsize=256)
def module_for(params: ModuleParams) -> SuperModule:
    cls = RamondModule if params.sector is Sector.R else NSModule
    return cls(params)


def act(params: ModuleParams, x: Element, v: SuperVector) -> SuperVector:
    return module_for(params).act(x, v)


def act_ramond(params: ModuleParams, x: Element, v: SuperVector) -> SuperVector:
    if params.sector is not Sector.R:
        raise SectorMismatch("act_ramond needs Ramond parameters")
    return module_for(params).act(x, v)


def act_ns(params: ModuleParams, x: Element, v: SuperVector) -> SuperVector:
    if params.sector is not Sector.NS:
        raise SectorMismatch("act_ns needs Neveu-Schwarz parameters")
    if params.sqrt_lambda is None:
        raise MissingSqrtLambda("the Neveu-Schwarz action needs sqrt_lambda")
    return module_for(params).act(x, v)


def act_restricted(
    params: ModuleParams, x: Element, v: SuperVector, algebra: SuperBMS = DEFAULT
) -> SuperVector:
    """A Ramond module viewed as a Neveu-Schwarz module through ``sigma``."""
    return act_ramond(params, algebra.sigma(x), v)


# -- the intertwiner --------------------------------------------------------


def _psi_odd_factor(params: ModuleParams) -> Scalar:
    if params.sqrt_lambda is None:
        raise MissingSqrtLambda("psi needs sqrt_lambda")
    return params.sqrt_lambda * _SQRT2_HALF


def psi(params: ModuleParams, v: SuperVector) -> SuperVector:
    """Neveu-Schwarz vector to Ramond vector: ``f(t,s) -> f(u/2, s/2)`` and
    ``k(y,x) -> sqrt(lambda/2) * t * k(u/2, s/2)``."""
    if v.kind is not Sector.NS:
        raise KindMismatch("psi maps Neveu-Schwarz vectors")
    factor = _psi_odd_factor(params)
    even = v.even.substitute(HALF, 1, HALF)
    odd = v.odd.substitute(HALF, 1, HALF).scale(factor)
    return SuperVector(Sector.R, even, odd)


def psi_inverse(params: ModuleParams, w: SuperVector) -> SuperVector:
    if w.kind is not Sector.R:
        raise KindMismatch("psi_inverse maps Ramond vectors")
    factor = _psi_odd_factor(params)
    even = w.even.substitute(2, 1, 2)
    odd = w.odd.substitute(2, 1, 2).scale(factor.inverse())
    return SuperVector(Sector.NS, even, odd)


def transport_h(h: Poly2, alpha) -> Poly2:
    """``g(u) = h_2(2u) / 2``, the Neveu-Schwarz parameter matching ``h``."""
    return h_m(h, alpha, 2).substitute(2, 1, 1).scale(HALF)


def check_transport(h: Poly2, g: Poly2, alpha, bound: int) -> int | None:
    """First ``m`` in ``[-bound, bound]`` with ``g_m(t/2) != h_{2m}(t)/2``, else None."""
    for m in range(-bound, bound + 1):
        lhs = h_m(g, alpha, m).substitute(HALF, 1, 1)
        rhs = h_m(h, alpha, 2 * m).scale(HALF)
        if lhs != rhs:
            return m
    return None


def require_transport(h: Poly2, g: Poly2, alpha, bound: int) -> None:
    m = check_transport(h, g, alpha, bound)
    if m is not None:
        raise TransportConditionFailed(m)


# -- quotients --------------------------------------------------------------


def quotient_act(params: ModuleParams, x: Element, v: QuotientVector) -> QuotientVector:
    """Action on the quotient ``pi_i / pi_{i+1}``: only ``L_m`` survives.

    ``L_m [u^i g(s)] = lambda^m (s + m(h(0) - i)) [u^i g(s - m)]``.
    """
    if x.sector is not Sector.R or params.sector is not Sector.R:
        raise SectorMismatch("the quotient action is defined for the Ramond sector")
    shift = params.h.coeff(0, 0) - v.i
    items = []
    for g, c in x.items():
        if g.kind is not Kind.L:
            continue
        m = g.idx2 // 2
        mult = V2 + shift * m
        items.append((c * params.lam**m, mult * v.g.shift_v2(m)))
    return QuotientVector(v.i, Poly2.combine(items))


def project_to_quotient(v: SuperVector, i: int) -> QuotientVector:
    """Class of a vector of ``pi_i`` in ``pi_i / pi_{i+1}``."""
    if v.kind is not Sector.R:
        raise KindMismatch("quotients are taken in the Ramond module")
    if not v.even.divisible_by_v1(i):
        raise ValueError(f"vector is not in the submodule with even part divisible by u^{i}")
    g = Poly2({(0, e2): c for (e1, e2), c in v.even.terms.items() if e1 == i})
    return QuotientVector(i, g)


# -- parameter extraction ---------------------------------------------------


def extract_params(oracle, kind: Sector, degree_bound: int | None = None):
    """Recover ``(lambda, alpha, h)`` from an action given as a black box.

    ``oracle(x, v)`` must return ``x . v``.  Only the cyclic vector ``1`` is
    probed.  ``degree_bound`` is the number of ``L_m`` samples (``m = 1..N``)
    cross-checked against the recovered data; it defaults to
    ``max(2, deg h + 1)``.
    """
    one = SuperVector.one(kind)

    def ask(x):
        out = oracle(x, one)
        if not isinstance(out, SuperVector) or out.kind is not kind:
            raise InconsistentOracle(f"oracle returned {out!r} for {x}")
        return out

    w1 = ask(W(1, kind))
    if w1.odd or any(mono not in ((1, 0), (0, 0)) for mono in w1.even.monomials()):
        raise InconsistentOracle(f"W[1].1 = {w1} is not of the form lambda*(v1 - alpha)")
    lam = w1.even.coeff(1, 0)
    if not lam:
        raise InconsistentOracle(f"W[1].1 = {w1} has no v1 term")
    alpha = -w1.even.coeff(0, 0) / lam

    l1 = ask(L(1, kind))
    rest = l1.even.scale(lam.inverse()) - V2
    if l1.odd or not rest.is_univariate():
        raise InconsistentOracle(f"L[1].1 = {l1} is not of the form lambda*(s + h)")
    h = rest

    bound = degree_bound if degree_bound is not None else max(2, h.degree_v1() + 1)
    one_poly = ONE_POLY
    for m in range(1, bound + 1):
        lam_m = lam**m
        want_l = (V2 + h_m(h, alpha, m)).scale(lam_m)
        got_l = ask(L(m, kind))
        if got_l.odd or got_l.even != want_l:
            raise InconsistentOracle(f"L[{m}].1 = {got_l}, expected {want_l}")
        want_w = (V1 - alpha * m).scale(lam_m)
        got_w = ask(W(m, kind))
        if got_w.odd or got_w.even != want_w:
            raise InconsistentOracle(f"W[{m}].1 = {got_w}, expected {want_w}")
        if kind is Sector.R:
            got_g = ask(G(m, kind))
            if got_g.even or got_g.odd != one_poly.scale(lam_m):
                raise InconsistentOracle(f"G[{m}].1 = {got_g}, expected lambda^{m}*t")
    if kind is Sector.NS:
        got_g = ask(G(Fraction(1, 2), kind))
        if got_g.even or got_g.odd != one_poly:
            raise InconsistentOracle(f"G[1/2].1 = {got_g}, expected the odd unit")
    return lam, alpha, h
