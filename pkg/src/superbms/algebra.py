"""The super-BMS3 superalgebras in the Ramond and Neveu-Schwarz sectors.

Basis: ``L_m, W_m`` (m integer), ``G_r`` (r integer in the Ramond sector,
half-integer in the Neveu-Schwarz sector) and central ``C1, C2``.  Indices are
stored doubled (``idx2 = 2m`` or ``2r``) so both sectors share one integer type.

Two conventions for the central terms are offered.  ``"consistent"`` (the
default) uses ``[L_m, W_n] = ... - m^3/24 C2`` which is the central term forced
by super-Jacobi once ``[G_r, G_s]`` carries ``r^2/6 C2``; its embedding
``sigma`` shifts ``L_0`` by ``-C1/16`` and doubles the central elements.
``"uniform"`` uses ``(m^3 - m)/12`` for both ``[L, L]`` and ``[L, W]`` and a
``sigma`` that fixes the centre; it is kept so the resulting Jacobi and
homomorphism failures can be exhibited.
"""

from __future__ import annotations

from enum import Enum, IntEnum
from fractions import Fraction
from typing import Iterable, NamedTuple

from superbms.errors import SectorMismatch
from superbms.poly import format_term, join_terms
from superbms.scalar import Scalar, as_scalar

__all__ = [
    "Sector",
    "Kind",
    "Gen",
    "Element",
    "L",
    "W",
    "G",
    "C1",
    "C2",
    "parity",
    "SuperBMS",
    "CONVENTIONS",
    "DEFAULT",
    "superbracket",
    "sigma",
    "generators",
]


class Sector(Enum):
    R = "R"
    NS = "NS"

    @property
    def odd_idx2_parity(self) -> int:
        """Parity of ``idx2`` for the odd generators ``G``."""
        return 0 if self is Sector.R else 1

    @classmethod
    def parse(cls, text: str) -> "Sector":
        key = text.strip().upper()
        aliases = {"R": cls.R, "RAMOND": cls.R, "NS": cls.NS, "NEVEU-SCHWARZ": cls.NS}
        if key not in aliases:
            raise ValueError(f"unknown sector {text!r}")
        return aliases[key]


class Kind(IntEnum):
    L = 0
    W = 1
    G = 2
    C1 = 3
    C2 = 4


class Gen(NamedTuple):
    kind: Kind
    idx2: int

    @property
    def odd(self) -> bool:
        return self.kind is Kind.G

    @property
    def index(self) -> Fraction:
        return Fraction(self.idx2, 2)

    def label(self) -> str:
        if self.kind in (Kind.C1, Kind.C2):
            return self.kind.name
        return f"{self.kind.name}[{_half_str(self.idx2)}]"


def _half_str(idx2: int) -> str:
    return str(idx2 // 2) if idx2 % 2 == 0 else f"{idx2}/2"


def _check_gen(g: Gen, sector: Sector) -> None:
    if g.kind in (Kind.C1, Kind.C2):
        ok = g.idx2 == 0
    elif g.kind is Kind.G:
        ok = g.idx2 % 2 == sector.odd_idx2_parity
    else:
        ok = g.idx2 % 2 == 0
    if not ok:
        raise SectorMismatch(f"{g.label()} is not a generator of the {sector.value} sector")


class Element:
    """Finite linear combination of basis generators in one sector."""

    __slots__ = ("sector", "_terms", "_hash")

    def __init__(self, sector: Sector, terms: dict | Iterable = ()):
        self.sector = sector
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict[Gen, Scalar] = {}
        for g, c in items:
            g = Gen(Kind(g[0]), int(g[1]))
            _check_gen(g, sector)
            c = as_scalar(c)
            clean[g] = clean.get(g, Scalar._raw(0, 0, 1)) + c
        self._terms = {g: c for g, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _make(cls, sector: Sector, terms: dict) -> "Element":
        obj = object.__new__(cls)
        obj.sector = sector
        obj._terms = {g: c for g, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, sector: Sector) -> "Element":
        return cls._make(sector, {})

    @classmethod
    def gen(cls, kind: Kind, idx2: int, sector: Sector, coeff=1) -> "Element":
        return cls(sector, {Gen(kind, idx2): coeff})

    @property
    def terms(self) -> dict[Gen, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, g: Gen) -> Scalar:
        return self._terms.get(g, Scalar._raw(0, 0, 1))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def parity(self) -> str:
        """``"even"``, ``"odd"`` or ``"mixed"``; zero counts as even."""
        odd = [g.odd for g in self._terms]
        if not any(odd):
            return "even"
        if all(odd):
            return "odd"
        return "mixed"

    def even_part(self) -> "Element":
        return Element._make(self.sector, {g: c for g, c in self._terms.items() if not g.odd})

    def odd_part(self) -> "Element":
        return Element._make(self.sector, {g: c for g, c in self._terms.items() if g.odd})

    # -- linear structure -------------------------------------------------

    def _same_sector(self, other: "Element") -> None:
        if self.sector is not other.sector:
            raise SectorMismatch(f"cannot combine {self.sector.value} and {other.sector.value} elements")

    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        self._same_sector(other)
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out[g] + c if g in out else c
        return Element._make(self.sector, out)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return Element._make(self.sector, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return Element._make(self.sector, {g: c * s for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.sector is other.sector and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sector, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        return join_terms([format_term(self._terms[g], g.label()) for g in sorted(self._terms)])

    def __repr__(self):
        return f"Element({self.sector.value}, {str(self)!r})"


def _sector_for_half(r) -> tuple[int, Sector]:
    r = Fraction(r)
    idx2 = 2 * r
    if idx2.denominator != 1:
        raise ValueError(f"G index {r} is not in (1/2)Z")
    idx2 = int(idx2)
    return idx2, (Sector.NS if idx2 % 2 else Sector.R)


def L(m: int, sector: Sector = Sector.R, coeff=1) -> Element:
    return Element.gen(Kind.L, 2 * m, sector, coeff)


def W(m: int, sector: Sector = Sector.R, coeff=1) -> Element:
    return Element.gen(Kind.W, 2 * m, sector, coeff)


def G(r, sector: Sector | None = None, coeff=1) -> Element:
    """``G_r``; the sector defaults to the one implied by ``r``."""
    idx2, implied = _sector_for_half(r)
    return Element.gen(Kind.G, idx2, sector or implied, coeff)


def C1(sector: Sector = Sector.R, coeff=1) -> Element:
    return Element.gen(Kind.C1, 0, sector, coeff)


def C2(sector: Sector = Sector.R, coeff=1) -> Element:
    return Element.gen(Kind.C2, 0, sector, coeff)


def parity(x: Element) -> str:
    return x.parity()


def generators(sector: Sector, bound2: int, kinds=(Kind.L, Kind.W, Kind.G, Kind.C1, Kind.C2)) -> list[Gen]:
    """Basis generators with ``|idx2| <= bound2``, ordered by ``(kind, idx2)``."""
    out = []
    for kind in sorted(kinds):
        if kind in (Kind.C1, Kind.C2):
            out.append(Gen(kind, 0))
            continue
        step_parity = sector.odd_idx2_parity if kind is Kind.G else 0
        for idx2 in range(-bound2, bound2 + 1):
            if idx2 % 2 == step_parity:
                out.append(Gen(kind, idx2))
    return out


CONVENTIONS = ("consistent", "uniform")

_ZERO = Scalar._raw(0, 0, 1)
_SQRT2_HALF = Scalar._raw(0, 1, 2)


class SuperBMS:
    """Structure constants of the superalgebra.

    The four bracket families are the methods :meth:`ll`, :meth:`lw`,
    :meth:`lg` and :meth:`gg`; each takes doubled indices and returns a dict
    ``Gen -> Scalar``.  Subclasses may override one family to build a mutant.
    """

    def __init__(self, central: str = "consistent"):
        if central not in CONVENTIONS:
            raise ValueError(f"central convention must be one of {CONVENTIONS}")
        self.central = central
        self._cache: dict = {}

    # -- bracket families (doubled indices) --------------------------------

    def ll(self, a2: int, b2: int) -> dict:
        m, n = a2 // 2, b2 // 2
        out = {Gen(Kind.L, a2 + b2): Scalar(n - m)}
        if m + n == 0:
            out[Gen(Kind.C1, 0)] = Scalar(Fraction(m**3 - m, 12))
        return out

    def lw(self, a2: int, b2: int) -> dict:
        m, n = a2 // 2, b2 // 2
        out = {Gen(Kind.W, a2 + b2): Scalar(n - m)}
        if m + n == 0:
            if self.central == "consistent":
                out[Gen(Kind.C2, 0)] = Scalar(Fraction(-(m**3), 24))
            else:
                out[Gen(Kind.C2, 0)] = Scalar(Fraction(m**3 - m, 12))
        return out

    def lg(self, a2: int, r2: int) -> dict:
        # r - m/2 with r = r2/2, m = a2/2
        return {Gen(Kind.G, a2 + r2): Scalar(Fraction(2 * r2 - a2, 4))}

    def gg(self, r2: int, s2: int) -> dict:
        out = {Gen(Kind.W, r2 + s2): Scalar(2)}
        if r2 + s2 == 0:
            out[Gen(Kind.C2, 0)] = Scalar(Fraction(r2 * r2, 24))
        return out

    # -- generic bracket ---------------------------------------------------

    def bracket_gens(self, x: Gen, y: Gen) -> dict:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        kx, ky = x.kind, y.kind
        if kx is Kind.L and ky is Kind.L:
            out = self.ll(x.idx2, y.idx2)
        elif kx is Kind.L and ky is Kind.W:
            out = self.lw(x.idx2, y.idx2)
        elif kx is Kind.W and ky is Kind.L:
            out = _negate(self.lw(y.idx2, x.idx2))
        elif kx is Kind.L and ky is Kind.G:
            out = self.lg(x.idx2, y.idx2)
        elif kx is Kind.G and ky is Kind.L:
            out = _negate(self.lg(y.idx2, x.idx2))
        elif kx is Kind.G and ky is Kind.G:
            out = self.gg(x.idx2, y.idx2)
        else:
            out = {}
        out = {g: c for g, c in out.items() if c}
        self._cache[key] = out
        return out

    def bracket(self, x: Element, y: Element) -> Element:
        if x.sector is not y.sector:
            raise SectorMismatch(f"bracket of {x.sector.value} and {y.sector.value} elements")
        acc: dict[Gen, Scalar] = {}
        for gx, cx in x.items():
            for gy, cy in y.items():
                b = self.bracket_gens(gx, gy)
                if not b:
                    continue
                c = cx * cy
                for g, k in b.items():
                    acc[g] = acc.get(g, _ZERO) + c * k
        return Element._make(x.sector, acc)

    # -- embedding NS -> R -------------------------------------------------

    def sigma_gen(self, g: Gen) -> dict:
        if g.kind in (Kind.C1, Kind.C2):
            return {g: Scalar(2) if self.central == "consistent" else Scalar(1)}
        if g.kind is Kind.G:
            return {Gen(Kind.G, 2 * g.idx2): _SQRT2_HALF}
        out = {Gen(g.kind, 2 * g.idx2): Scalar(Fraction(1, 2))}
        if g.kind is Kind.L and g.idx2 == 0 and self.central == "consistent":
            out[Gen(Kind.C1, 0)] = Scalar(Fraction(-1, 16))
        return out

    def sigma(self, x: Element) -> Element:
        if x.sector is not Sector.NS:
            raise SectorMismatch("sigma is defined on Neveu-Schwarz elements")
        acc: dict[Gen, Scalar] = {}
        for g, c in x.items():
            for h, k in self.sigma_gen(g).items():
                acc[h] = acc.get(h, _ZERO) + c * k
        return Element._make(Sector.R, acc)

    def __repr__(self):
        return f"{type(self).__name__}(central={self.central!r})"


def _negate(d: dict) -> dict:
    return {g: -c for g, c in d.items()}


DEFAULT = SuperBMS()


def superbracket(x: Element, y: Element, algebra: SuperBMS = DEFAULT) -> Element:
    return algebra.bracket(x, y)


def sigma(x: Element, algebra: SuperBMS = DEFAULT) -> Element:
    return algebra.sigma(x)
