import pytest
from hypothesis import given, strategies as st

from superbms.algebra import Element, L, Sector, W, generators
from superbms.errors import ParseError, SectorMismatch, UnknownVariable
from superbms.grammar import parse_algebra_expr, parse_h, parse_poly, parse_scalar, parse_vector_expr
from superbms.modules import SuperVector
from superbms.poly import V1, V2
from superbms.scalar import SQRT2, Scalar

from conftest import polys, scalars

R, NS = Sector.R, Sector.NS


def test_scalar_syntax():
    assert parse_scalar("3/2") == Scalar("3/2")
    assert parse_scalar("1+2*sqrt2") == Scalar(1, 2)
    assert parse_scalar("-(1 - sqrt2)/3") == (SQRT2 - 1) / 3
    assert parse_scalar("sqrt2^3") == 2 * SQRT2
    with pytest.raises(ParseError):
        parse_scalar("1/0")
    with pytest.raises(ParseError):
        parse_scalar("u")


def test_algebra_examples():
    assert parse_algebra_expr("L[2] - 4*W[-1]") == L(2) - 4 * W(-1)
    x = parse_algebra_expr("G[1/2] + sqrt2*C2")
    assert x.sector is NS
    with pytest.raises(SectorMismatch):
        parse_algebra_expr("G[1/2] + G[1]")
    with pytest.raises(SectorMismatch):
        parse_algebra_expr("G[1/2]", R)
    assert parse_algebra_expr("L[1]", NS).sector is NS


@pytest.mark.parametrize(
    "text,pos",
    [("L[1/2]", 0), ("L[2]*L[3]", 4), ("L[2] + 1", 5), ("2*(L[1]", 7), ("L[2] $", 5), ("Q[1]", 0)],
)
def test_algebra_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_algebra_expr(text)
    assert info.value.pos == pos


def test_vector_examples():
    assert parse_vector_expr("even: 1 ; odd: 0", R) == SuperVector.one(R)
    assert parse_vector_expr("even: 0 ; odd: 1", R) == SuperVector.one_odd(R)
    with pytest.raises(UnknownVariable):
        parse_vector_expr("even: y ; odd: 0", R)
    v = parse_vector_expr("even: u^2*s + 1 ; odd: s", R)
    assert v == SuperVector(R, V1**2 * V2 + 1, V2)
    w = parse_vector_expr("even: t*s ; odd: y^2 - x/2", NS)
    assert w == SuperVector(NS, V1 * V2, V1**2 - V2 / 2)
    with pytest.raises(UnknownVariable):
        parse_vector_expr("even: t", R)
    with pytest.raises(UnknownVariable):
        parse_vector_expr("odd: t", NS)
    with pytest.raises(ParseError):
        parse_vector_expr("even: 1 ; even: 2", R)
    with pytest.raises(ParseError):
        parse_vector_expr("1 + u", R)


def test_h_syntax():
    assert parse_h("t^2+1") == V1**2 + 1
    with pytest.raises(UnknownVariable):
        parse_h("s")


@given(scalars)
def test_scalar_round_trip(c):
    assert parse_scalar(str(c)) == c


@given(polys())
def test_poly_round_trip(p):
    assert parse_poly(p.format()) == p
    assert parse_poly(p.format(("u", "s")), ("u", "s")) == p


coef = st.sampled_from([Scalar(1), Scalar(-1), Scalar("3/2"), SQRT2, Scalar(1, -1), Scalar("-1/2*sqrt2")])


@given(st.sampled_from([R, NS]), st.data())
def test_element_round_trip(sector, data):
    gens = generators(sector, 5)
    terms = data.draw(st.lists(st.tuples(st.sampled_from(gens), coef), max_size=4))
    x = Element(sector, terms)
    assert parse_algebra_expr(str(x), sector) == x


@given(st.sampled_from([R, NS]), polys(), polys())
def test_vector_round_trip(kind, f, k):
    v = SuperVector(kind, f, k)
    assert parse_vector_expr(v.format(), kind) == v
