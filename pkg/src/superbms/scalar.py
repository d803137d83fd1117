"""Exact arithmetic in the quadratic field Q(sqrt2).

A :class:`Scalar` is ``a + b*sqrt2`` with rational ``a`` and ``b``.  Internally
the value is kept as three Python integers ``(an, bn, d)`` meaning
``(an + bn*sqrt2) / d`` with ``d > 0`` and ``gcd(an, bn, d) == 1``; that form is
canonical, so equality is structural and hashing is cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["Scalar", "SQRT2", "ZERO", "ONE", "HALF", "as_scalar", "scalar_arith", "int_pow"]


def _canon(an: int, bn: int, d: int) -> tuple[int, int, int]:
    if d < 0:
        an, bn, d = -an, -bn, -d
    g = gcd(an, bn, d)
    if g != 1:
        an //= g
        bn //= g
        d //= g
    return an, bn, d


class Scalar:
    """An element ``a + b*sqrt2`` of Q(sqrt2). Immutable."""

    __slots__ = ("_an", "_bn", "_d")

    def __init__(self, a: int | Fraction | str = 0, b: int | Fraction = 0):
        if isinstance(a, str):
            s = Scalar.parse(a)
            self._an, self._bn, self._d = s._an, s._bn, s._d
            return
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._an, self._bn, self._d = _canon(
            a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d
        )

    @classmethod
    def _raw(cls, an: int, bn: int, d: int) -> "Scalar":
        obj = object.__new__(cls)
        obj._an, obj._bn, obj._d = _canon(an, bn, d)
        return obj

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from superbms.grammar import parse_scalar

        return parse_scalar(text)

    # -- components -------------------------------------------------------

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return Fraction(self._an, self._d)

    @property
    def b(self) -> Fraction:
        """Coefficient of sqrt2."""
        return Fraction(self._bn, self._d)

    @property
    def raw(self) -> tuple[int, int, int]:
        return self._an, self._bn, self._d

    def is_rational(self) -> bool:
        return self._bn == 0

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._an, -self._bn, self._d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; nonzero for every nonzero scalar."""
        return Fraction(self._an * self._an - 2 * self._bn * self._bn, self._d * self._d)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return Scalar._raw(self._an + o._an, self._bn + o._bn, self._d)
        return Scalar._raw(
            self._an * o._d + o._an * self._d, self._bn * o._d + o._bn * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._an, -self._bn, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, d1 = self._an, self._bn, self._d
        a2, b2, d2 = o._an, o._bn, o._d
        return Scalar._raw(a1 * a2 + 2 * b1 * b2, a1 * b2 + b1 * a2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        an, bn, d = self._an, self._bn, self._d
        n = an * an - 2 * bn * bn
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        # 1/((an + bn r)/d) = d (an - bn r) / (an^2 - 2 bn^2)
        return Scalar._raw(d * an, -d * bn, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return int_pow(self, n)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._an == o._an and self._bn == o._bn and self._d == o._d

    def __hash__(self):
        if self._bn == 0:
            return hash(Fraction(self._an, self._d))
        return hash((self._an, self._bn, self._d))

    def __bool__(self):
        return self._an != 0 or self._bn != 0

    # -- text -------------------------------------------------------------

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return _frac_str(a)
        if b == 1:
            bs = "sqrt2"
        elif b == -1:
            bs = "-sqrt2"
        else:
            bs = _frac_str(b) + "*sqrt2"
        if a == 0:
            return bs
        if bs.startswith("-"):
            return f"{_frac_str(a)} - {bs[1:]}"
        return f"{_frac_str(a)} + {bs}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar._raw(x.numerator, 0, x.denominator)
    return None


def as_scalar(x) -> Scalar:
    """Coerce an int, Fraction, Scalar or scalar text to :class:`Scalar`."""
    if isinstance(x, str):
        return Scalar.parse(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(sqrt2)")
    return s


def int_pow(x: Scalar, n: int) -> Scalar:
    """``x**n`` for any integer ``n``; negative powers of zero raise ZeroDivisionError."""
    x = as_scalar(x)
    if n < 0:
        return int_pow(x.inverse(), -n)
    result = ONE
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def scalar_arith(x, y, op: str) -> Scalar:
    x, y = as_scalar(x), as_scalar(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
HALF = Scalar._raw(1, 0, 2)
SQRT2 = Scalar._raw(0, 1, 1)
