"""Exact linear algebra on a finite window of monomials.

A :class:`Truncation` fixes a finite basis of monomials (separate caps on the
two exponents).  :class:`SpanBasis` keeps a subspace in reduced row-echelon
form so that rank and membership are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from superbms.modules import SuperVector
from superbms.scalar import Scalar

__all__ = ["Truncation", "vectorize", "SpanBasis", "span_insert"]

_ZERO = Scalar._raw(0, 0, 1)


@dataclass(frozen=True)
class Truncation:
    """Monomials ``v1^e1 v2^e2`` with ``e1 <= max_e1`` and ``e2 <= max_e2``.

    Basis order: even monomials by total degree then ``e1`` ascending, followed
    by the odd monomials in the same order when ``include_odd`` is set.
    """

    max_e1: int
    max_e2: int
    include_odd: bool = True

    def __post_init__(self):
        if self.max_e1 < 0 or self.max_e2 < 0:
            raise ValueError("truncation caps must be nonnegative")

    @cached_property
    def monomials(self) -> tuple[tuple[int, int], ...]:
        monos = [(a, b) for a in range(self.max_e1 + 1) for b in range(self.max_e2 + 1)]
        return tuple(sorted(monos, key=lambda m: (m[0] + m[1], m[0])))

    @cached_property
    def basis(self) -> tuple[tuple[bool, tuple[int, int]], ...]:
        """``(is_odd, monomial)`` pairs in coordinate order."""
        out = [(False, m) for m in self.monomials]
        if self.include_odd:
            out += [(True, m) for m in self.monomials]
        return tuple(out)

    @cached_property
    def index(self) -> dict:
        return {key: i for i, key in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, mono) -> bool:
        return mono[0] <= self.max_e1 and mono[1] <= self.max_e2

    def basis_vectors(self, kind) -> list[SuperVector]:
        return [SuperVector.monomial(kind, odd, *mono) for odd, mono in self.basis]


def vectorize(v: SuperVector, tr: Truncation) -> tuple[list[Scalar], bool]:
    """Coordinates of ``v`` in the window and whether some term fell outside it."""
    coords = [_ZERO] * tr.dim
    overflow = False
    index = tr.index
    for odd, part in ((False, v.even), (True, v.odd)):
        if not part:
            continue
        for mono, c in part.terms.items():
            pos = index.get((odd, mono))
            if pos is None:
                overflow = True
            else:
                coords[pos] = c
    return coords, overflow


class SpanBasis:
    """Subspace of ``Q(sqrt2)^dim`` held in reduced row-echelon form."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[Scalar]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._pivots)

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self._rows]

    def _reduce(self, coords) -> list[Scalar]:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        v = list(coords)
        for p, row in zip(self._pivots, self._rows):
            c = v[p]
            if c:
                for j in range(p, self.dim):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    def contains(self, coords) -> bool:
        return not any(self._reduce(coords))

    def insert(self, coords) -> bool:
        """Add a vector; return True when the rank grew."""
        v = self._reduce(coords)
        p = next((j for j, c in enumerate(v) if c), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [c * inv if c else c for c in v]
        for row in self._rows:
            c = row[p]
            if c:
                for j in range(p, self.dim):
                    if v[j]:
                        row[j] = row[j] - c * v[j]
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < p:
            pos += 1
        self._rows.insert(pos, v)
        self._pivots.insert(pos, p)
        return True


def span_insert(b: SpanBasis, coords) -> tuple[SpanBasis, bool]:
    grew = b.insert(coords)
    return b, grew
