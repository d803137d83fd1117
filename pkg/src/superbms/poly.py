"""Sparse bivariate polynomials over Q(sqrt2).

The two variables are abstract (``v1``, ``v2``); callers decide what they mean
(``u = t^2`` and ``s`` for the Ramond module, ``t, s`` or ``y, x`` for the
Neveu-Schwarz one, ``t`` alone for the parameter polynomial ``h``).

Coefficients are stored as integer pairs ``(a, b)`` over one shared positive
denominator, i.e. the term ``(a + b*sqrt2)/d * v1^e1 * v2^e2``.  The shared
denominator keeps the inner loops in plain integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd, lcm
from typing import Iterable, Mapping

from superbms.scalar import ONE, Scalar, as_scalar

__all__ = [
    "Poly2",
    "Poly1",
    "V1",
    "V2",
    "poly_arith",
    "shift_v2",
    "d_dv1",
    "divided_difference",
    "h_m",
    "HIdentityResult",
    "check_h_identity",
    "substitute",
]

Mono = tuple[int, int]


def _normalize(c: dict, d: int) -> tuple[dict, int]:
    c = {k: ab for k, ab in c.items() if ab[0] or ab[1]}
    if not c:
        return {}, 1
    g = gcd(d, *(x for ab in c.values() for x in ab))
    if g != 1:
        c = {k: (a // g, b // g) for k, (a, b) in c.items()}
        d //= g
    return c, d


def _grlex_desc(mono: Mono):
    return (-(mono[0] + mono[1]), -mono[0])


class Poly2:
    """Polynomial in two commuting variables ``v1``, ``v2``. Immutable."""

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, terms: Mapping[Mono, object] | None = None):
        if not terms:
            self._c, self._d, self._hash = {}, 1, None
            return
        scal = {}
        for (e1, e2), coeff in terms.items():
            if e1 < 0 or e2 < 0:
                raise ValueError(f"negative exponent in {(e1, e2)}")
            scal[(e1, e2)] = as_scalar(coeff)
        d = lcm(*(s.raw[2] for s in scal.values()))
        c = {}
        for k, s in scal.items():
            an, bn, sd = s.raw
            f = d // sd
            c[k] = (an * f, bn * f)
        self._c, self._d = _normalize(c, d)
        self._hash = None

    @classmethod
    def _make(cls, c: dict, d: int, normalized: bool = False) -> "Poly2":
        obj = object.__new__(cls)
        if not normalized:
            c, d = _normalize(c, d)
        obj._c, obj._d, obj._hash = c, d, None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> "Poly2":
        return cls({(e1, e2): c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "Poly2":
        """Univariate polynomial in ``v1`` from ascending coefficients."""
        return cls({(k, 0): c for k, c in enumerate(coeffs) if as_scalar(c)})

    @classmethod
    def combine(cls, items: Iterable[tuple[Scalar, "Poly2"]]) -> "Poly2":
        """Linear combination ``sum(c * p for c, p in items)`` in one pass."""
        items = [(c, p) for c, p in items if p._c and c]
        if not items:
            return ZERO_POLY
        dens = [c._d * p._d for c, p in items]
        big = lcm(*dens)
        acc: dict = {}
        get = acc.get
        for (c, p), dd in zip(items, dens):
            k = big // dd
            ca, cb = c._an * k, c._bn * k
            if cb == 0:
                for mono, (a, b) in p._c.items():
                    old = get(mono)
                    if old is None:
                        acc[mono] = (ca * a, ca * b)
                    else:
                        acc[mono] = (old[0] + ca * a, old[1] + ca * b)
            else:
                for mono, (a, b) in p._c.items():
                    na = ca * a + 2 * cb * b
                    nb = ca * b + cb * a
                    old = get(mono)
                    if old is None:
                        acc[mono] = (na, nb)
                    else:
                        acc[mono] = (old[0] + na, old[1] + nb)
        return cls._make(acc, big)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Mono, Scalar]:
        d = self._d
        return {k: Scalar._raw(a, b, d) for k, (a, b) in self._c.items()}

    def monomials(self):
        return self._c.keys()

    def coeff(self, e1: int, e2: int = 0) -> Scalar:
        ab = self._c.get((e1, e2))
        if ab is None:
            return Scalar._raw(0, 0, 1)
        return Scalar._raw(ab[0], ab[1], self._d)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def degree_v1(self) -> int:
        return max((e1 for e1, _ in self._c), default=-1)

    def degree_v2(self) -> int:
        return max((e2 for _, e2 in self._c), default=-1)

    def is_univariate(self) -> bool:
        """True when no term involves ``v2``."""
        return all(e2 == 0 for _, e2 in self._c)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        if not o._c:
            return self
        if not self._c:
            return o
        if self._d == o._d:
            c = dict(self._c)
            for k, (a, b) in o._c.items():
                old = c.get(k)
                c[k] = (a, b) if old is None else (old[0] + a, old[1] + b)
            return Poly2._make(c, self._d)
        return Poly2.combine([(ONE, self), (ONE, o)])

    __radd__ = __add__

    def __neg__(self):
        return Poly2._make({k: (-a, -b) for k, (a, b) in self._c.items()}, self._d, True)

    def __sub__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly2):
            return self._mul_poly(other)
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.scale(s.inverse())

    def scale(self, s: Scalar) -> "Poly2":
        if not s or not self._c:
            return ZERO_POLY
        sa, sb, sd = s.raw
        if sb == 0:
            c = {k: (sa * a, sa * b) for k, (a, b) in self._c.items()}
        else:
            c = {k: (sa * a + 2 * sb * b, sa * b + sb * a) for k, (a, b) in self._c.items()}
        return Poly2._make(c, self._d * sd)

    def _mul_poly(self, o: "Poly2") -> "Poly2":
        if not self._c or not o._c:
            return ZERO_POLY
        acc: dict = {}
        get = acc.get
        for (i1, j1), (a1, b1) in self._c.items():
            for (i2, j2), (a2, b2) in o._c.items():
                k = (i1 + i2, j1 + j2)
                na = a1 * a2 + 2 * b1 * b2
                nb = a1 * b2 + b1 * a2
                old = get(k)
                acc[k] = (na, nb) if old is None else (old[0] + na, old[1] + nb)
        return Poly2._make(acc, self._d * o._d)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus and substitutions ---------------------------------------

    def shift_v2(self, m) -> "Poly2":
        """``p(v1, v2 - m)``, expanded binomially."""
        m = as_scalar(m)
        if not m or not self._c:
            return self
        ma, mb, md = m.raw
        top = self.degree_v2()
        # numerators of (-m)^i, each over md^i
        pw = [(1, 0)]
        for _ in range(top):
            pa, pb = pw[-1]
            pw.append((-(pa * ma + 2 * pb * mb), -(pa * mb + pb * ma)))
        lift = [md ** (top - i) for i in range(top + 1)]
        acc: dict = {}
        get = acc.get
        for (e1, k), (a, b) in self._c.items():
            for j in range(k + 1):
                i = k - j
                pa, pb = pw[i]
                f = comb(k, j) * lift[i]
                na = (a * pa + 2 * b * pb) * f
                nb = (a * pb + b * pa) * f
                key = (e1, j)
                old = get(key)
                acc[key] = (na, nb) if old is None else (old[0] + na, old[1] + nb)
        return Poly2._make(acc, self._d * md**top)

    def d_dv1(self) -> "Poly2":
        c = {(e1 - 1, e2): (e1 * a, e1 * b) for (e1, e2), (a, b) in self._c.items() if e1}
        return Poly2._make(c, self._d)

    def substitute(self, c1, e: int, c2) -> "Poly2":
        """Simultaneous ``v1 -> c1*v1**e`` and ``v2 -> c2*v2``."""
        c1, c2 = as_scalar(c1), as_scalar(c2)
        if e not in (1, 2):
            raise ValueError("v1 exponent must be 1 or 2")
        out = {}
        for (e1, e2), coeff in self.terms.items():
            out[(e * e1, e2)] = coeff * c1**e1 * c2**e2
        return Poly2(out)

    def eval_v1(self, x) -> Scalar:
        """Value of a univariate polynomial at ``v1 = x``."""
        if not self.is_univariate():
            raise ValueError("eval_v1 needs a polynomial free of v2")
        x = as_scalar(x)
        acc = Scalar._raw(0, 0, 1)
        for k in range(self.degree_v1(), -1, -1):
            acc = acc * x + self.coeff(k, 0)
        return acc

    def as_v2(self) -> "Poly2":
        """Rename ``v1`` to ``v2`` in a univariate polynomial."""
        if not self.is_univariate():
            raise ValueError("as_v2 needs a polynomial free of v2")
        return Poly2._make({(0, e1): ab for (e1, _), ab in self._c.items()}, self._d, True)

    def divisible_by_v1(self, k: int) -> bool:
        return all(e1 >= k for e1, _ in self._c)

    # -- equality / text --------------------------------------------------

    def __eq__(self, other):
        o = _coerce_poly(other)
        if o is None:
            return NotImplemented
        return self._d == o._d and self._c == o._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._c.items()), self._d))
        return self._hash

    def format(self, names: tuple[str, str] = ("v1", "v2")) -> str:
        if not self._c:
            return "0"
        parts = []
        for mono in sorted(self._c, key=_grlex_desc):
            parts.append(format_term(self.coeff(*mono), _mono_str(mono, names)))
        return join_terms(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly2({self.format()!r})"


def _mono_str(mono: Mono, names: tuple[str, str]) -> str:
    bits = []
    for e, name in zip(mono, names):
        if e == 1:
            bits.append(name)
        elif e > 1:
            bits.append(f"{name}^{e}")
    return "*".join(bits)


def format_term(c: Scalar, mono: str) -> str:
    """Render ``c * mono``; an empty ``mono`` is the constant 1."""
    if not mono:
        text = str(c)
        return f"({text})" if c.a and c.b else text
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    if c.a and c.b:
        return f"({c})*{mono}"
    return f"{c}*{mono}"


def join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _coerce_poly(x) -> Poly2 | None:
    if isinstance(x, Poly2):
        return x
    try:
        s = as_scalar(x)
    except TypeError:
        return None
    return Poly2._make({(0, 0): s.raw[:2]}, s.raw[2], True) if s else ZERO_POLY


ZERO_POLY = Poly2()
ONE_POLY = Poly2._make({(0, 0): (1, 0)}, 1, True)
V1 = Poly2._make({(1, 0): (1, 0)}, 1, True)
V2 = Poly2._make({(0, 1): (1, 0)}, 1, True)

# A univariate polynomial in v1 (the parameter polynomials h and g).
Poly1 = Poly2


# -- operation-level API ----------------------------------------------------


def poly_arith(p: Poly2, q: Poly2, op: str) -> Poly2:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def shift_v2(p: Poly2, m) -> Poly2:
    return p.shift_v2(m)


def d_dv1(p: Poly2) -> Poly2:
    return p.d_dv1()


def substitute(p: Poly2, sub1: tuple, sub2) -> Poly2:
    c1, e = sub1
    return p.substitute(c1, e, sub2)


def divided_difference(h: Poly1, alpha) -> Poly1:
    """``(h(t) - h(alpha)) / (t - alpha)`` by the closed sum over coefficients.

    For ``h = sum c_k t^k`` the quotient is ``sum_k c_k sum_{j<k} alpha^(k-1-j) t^j``;
    no polynomial division is involved, so the result is exact by construction.
    """
    if not h.is_univariate():
        raise ValueError("divided_difference needs a univariate polynomial")
    alpha = as_scalar(alpha)
    deg = h.degree_v1()
    if deg < 1:
        return ZERO_POLY
    apow = [ONE]
    for _ in range(deg):
        apow.append(apow[-1] * alpha)
    out: dict = {}
    for (k, _), c in h.terms.items():
        for j in range(k):
            out[(j, 0)] = out.get((j, 0), 0) + c * apow[k - 1 - j]
    return Poly2(out)


def h_m(h: Poly1, alpha, m: int) -> Poly1:
    """``m*h(t) - m(m-1)*alpha*(h(t) - h(alpha))/(t - alpha)``."""
    alpha = as_scalar(alpha)
    if m == 0:
        return ZERO_POLY
    dd = divided_difference(h, alpha) if alpha else ZERO_POLY
    return Poly2.combine([(as_scalar(m), h), (-m * (m - 1) * alpha, dd)])


@dataclass(frozen=True)
class HIdentityResult:
    passed: bool
    lhs: Poly1
    rhs: Poly1

    @property
    def residual(self) -> Poly1:
        return self.lhs - self.rhs


def check_h_identity(h: Poly1, alpha, m: int, n: int) -> HIdentityResult:
    """Check ``n h_n - m h_m + n(t - n a) h_m' - m(t - m a) h_n' == (n - m) h_{m+n}``."""
    alpha = as_scalar(alpha)
    hm, hn = h_m(h, alpha, m), h_m(h, alpha, n)
    dm, dn = hm.d_dv1(), hn.d_dv1()
    lhs = Poly2.combine(
        [
            (as_scalar(n), hn),
            (as_scalar(-m), hm),
            (as_scalar(n), V1 * dm),
            (-n * n * alpha, dm),
            (as_scalar(-m), V1 * dn),
            (m * m * alpha, dn),
        ]
    )
    rhs = h_m(h, alpha, m + n).scale(as_scalar(n - m))
    return HIdentityResult(lhs == rhs, lhs, rhs)
