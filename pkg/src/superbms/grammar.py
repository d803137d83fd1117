"""Recursive-descent parsers for scalars, polynomials, elements and vectors.

One expression grammar serves all four::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' INT]
    atom   := INT | 'sqrt2' | NAME | GEN | '(' expr ')'
    GEN    := ('L'|'W'|'G') '[' ['-'] INT ['/' INT] ']' | 'C1' | 'C2'

Which names are accepted depends on the entry point.  Division is only by
nonzero constants, and generators enter linearly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from superbms.algebra import Element, Gen, Kind, Sector
from superbms.errors import ParseError, SectorMismatch, UnknownVariable
from superbms.modules import SuperVector, VAR_NAMES
from superbms.poly import Poly2
from superbms.scalar import SQRT2, Scalar

__all__ = ["parse_scalar", "parse_poly", "parse_h", "parse_algebra_expr", "parse_vector_expr"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Lin:
    """Linear combination of generators collected before the sector is known."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    def scale(self, c: Scalar) -> "_Lin":
        return _Lin({g: v * c for g, v in self.terms.items()})

    def add(self, other: "_Lin", sign: int) -> "_Lin":
        out = dict(self.terms)
        for g, v in other.terms.items():
            out[g] = out.get(g, Scalar()) + v * sign
        return _Lin(out)


class _Parser:
    def __init__(self, text: str, variables: dict | None = None, generators: bool = False, unknown=ParseError):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables or {}
        self.generators = generators
        self.unknown = unknown
        self.g_parities: list[tuple[int, int]] = []  # (idx2 parity, position) of G indices

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg: str, pos: int | None = None, cls=ParseError):
        raise cls(msg, self.tok[2] if pos is None else pos, self.text)

    def accept(self, sym: str) -> bool:
        kind, val, _ = self.tok
        if kind == "sym" and val == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym: str) -> None:
        if not self.accept(sym):
            found = self.tok[1] or "end of input"
            self.error(f"expected {sym!r}, found {found!r}")

    def expect_int(self) -> int:
        kind, val, _ = self.tok
        if kind != "int":
            self.error(f"expected an integer, found {val or 'end of input'!r}")
        self.i += 1
        return int(val)

    # -- grammar -----------------------------------------------------------

    def parse(self):
        value = self.expr()
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        start = self.tok[2]
        value = self._neg(self.term(), start) if sign < 0 else self.term()
        while True:
            pos = self.tok[2]
            if self.accept("+"):
                value = self._add(value, self.term(), 1, pos)
            elif self.accept("-"):
                value = self._add(value, self.term(), -1, pos)
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            pos = self.tok[2]
            if self.accept("*"):
                value = self._mul(value, self.factor(), pos)
            elif self.accept("/"):
                value = self._div(value, self.factor(), pos)
            else:
                return value

    def factor(self):
        pos = self.tok[2]
        base = self.atom()
        if self.accept("^"):
            n = self.expect_int()
            if isinstance(base, _Lin):
                self.error("generators cannot be raised to a power", pos)
            return base**n
        return base

    def atom(self):
        kind, val, pos = self.tok
        if kind == "int":
            self.i += 1
            return Poly2.const(int(val))
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if kind == "name":
            self.i += 1
            if val == "sqrt2":
                return Poly2.const(SQRT2)
            if val in self.variables:
                e1, e2 = self.variables[val]
                return Poly2.monomial(e1, e2)
            if self.generators and val in ("C1", "C2"):
                return _Lin({Gen(Kind[val], 0): Scalar(1)})
            if self.generators and val in ("L", "W", "G"):
                return self.generator(val, pos)
            self.error(f"unknown name {val!r}", pos, self.unknown)
        self.error(f"unexpected {val or 'end of input'!r}")

    def generator(self, name: str, pos: int) -> _Lin:
        self.expect("[")
        sign = -1 if self.accept("-") else 1
        num = self.expect_int()
        den = 1
        if self.accept("/"):
            den = self.expect_int()
            if den == 0:
                self.error("zero denominator in index", pos)
        self.expect("]")
        idx = Fraction(sign * num, den)
        idx2 = 2 * idx
        if idx2.denominator != 1:
            self.error(f"index {idx} of {name} is not in (1/2)Z", pos)
        idx2 = int(idx2)
        if name in ("L", "W") and idx2 % 2:
            self.error(f"index of {name} must be an integer", pos)
        if name == "G":
            self.g_parities.append((idx2 % 2, pos))
        return _Lin({Gen(Kind[name], idx2): Scalar(1)})

    # -- typed operations --------------------------------------------------

    def _const(self, p: Poly2, pos: int, what: str) -> Scalar:
        if any(mono != (0, 0) for mono in p.monomials()):
            self.error(f"{what} must be a constant", pos)
        return p.coeff(0, 0)

    def _neg(self, v, pos):
        return v.scale(Scalar(-1)) if isinstance(v, _Lin) else -v

    def _add(self, a, b, sign, pos):
        if isinstance(a, _Lin) and isinstance(b, _Lin):
            return a.add(b, sign)
        if isinstance(a, _Lin) or isinstance(b, _Lin):
            self.error("cannot add a constant to an algebra element", pos)
        return a + b if sign > 0 else a - b

    def _mul(self, a, b, pos):
        if isinstance(a, _Lin) and isinstance(b, _Lin):
            self.error("product of two generators is not an element of the algebra", pos)
        if isinstance(a, _Lin):
            return a.scale(self._const(b, pos, "coefficient"))
        if isinstance(b, _Lin):
            return b.scale(self._const(a, pos, "coefficient"))
        return a * b

    def _div(self, a, b, pos):
        if isinstance(b, _Lin):
            self.error("cannot divide by an algebra element", pos)
        c = self._const(b, pos, "divisor")
        if not c:
            self.error("division by zero", pos)
        if isinstance(a, _Lin):
            return a.scale(c.inverse())
        return a / c


def parse_scalar(text: str) -> Scalar:
    """Parse ``3/2``, ``1 + 2*sqrt2``, ``-(1 - sqrt2)/3`` and the like."""
    p = _Parser(text)
    value = p.parse()
    return value.coeff(0, 0)


def parse_poly(text: str, names: tuple[str, ...] = ("v1", "v2"), unknown=ParseError) -> Poly2:
    """Parse a polynomial; ``names[0]`` is ``v1`` and ``names[1]`` (if any) is ``v2``."""
    variables = {name: ((1, 0) if k == 0 else (0, 1)) for k, name in enumerate(names)}
    value = _Parser(text, variables, unknown=unknown).parse()
    return value


def parse_h(text: str) -> Poly2:
    """Parse the parameter polynomial ``h`` written in the variable ``t``."""
    return parse_poly(text, ("t",), unknown=UnknownVariable)


def parse_algebra_expr(text: str, sector: Sector | None = None) -> Element:
    """Parse ``2*L[3] - sqrt2*G[1/2] + C2``.

    The sector follows from the parity of doubled ``G`` indices.  If ``sector``
    is given it must agree; without any ``G`` and without ``sector`` the
    Ramond sector is assumed.
    """
    p = _Parser(text, generators=True)
    value = p.parse()
    if not isinstance(value, _Lin):
        if value:
            raise ParseError("expected an algebra element, found a constant", 0, text)
        value = _Lin({})
    parities = {par for par, _ in p.g_parities}
    if len(parities) > 1:
        raise SectorMismatch("G indices mix integers and half-integers")
    implied = None
    if parities:
        implied = Sector.NS if parities.pop() else Sector.R
    if sector is not None and implied is not None and sector is not implied:
        raise SectorMismatch(f"G indices belong to the {implied.value} sector, not {sector.value}")
    return Element(sector or implied or Sector.R, value.terms)


_PART = re.compile(r"\s*(even|odd)\s*:", re.IGNORECASE)


def parse_vector_expr(text: str, kind: Sector) -> SuperVector:
    """Parse ``even: <poly> ; odd: <poly>``; a missing part is zero.

    Ramond parts are written in ``u`` (standing for ``t^2``) and ``s``; the odd
    part is the cofactor of ``t``.  Neveu-Schwarz parts use ``t, s`` (even) and
    ``y, x`` (odd).
    """
    even_names, odd_names = VAR_NAMES[kind]
    parts = {"even": Poly2(), "odd": Poly2()}
    seen = set()
    offset = 0
    for chunk in text.split(";"):
        m = _PART.match(chunk)
        if m is None:
            raise ParseError("expected 'even:' or 'odd:'", offset, text)
        which = m.group(1).lower()
        if which in seen:
            raise ParseError(f"{which} part given twice", offset + m.start(1), text)
        seen.add(which)
        body = chunk[m.end():]
        names = even_names if which == "even" else odd_names
        try:
            parts[which] = parse_poly(body, names, unknown=UnknownVariable)
        except ParseError as exc:
            base = offset + m.end()
            raise type(exc)(str(exc).rsplit(" at position", 1)[0], base + exc.pos, text) from None
        offset += len(chunk) + 1
    return SuperVector(kind, parts["even"], parts["odd"])
