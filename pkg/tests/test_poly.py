from fractions import Fraction

from hypothesis import given, strategies as st

from superbms.poly import (
    V1,
    V2,
    Poly2,
    check_h_identity,
    d_dv1,
    divided_difference,
    h_m,
    poly_arith,
    shift_v2,
    substitute,
)
from superbms.scalar import HALF, SQRT2, Scalar

from conftest import polys, scalars

t = V1
ALPHAS = [Scalar(0), Scalar(1), Scalar(-2), HALF, SQRT2]


def test_arith_examples():
    assert poly_arith(V1 + V2, V1 - V2, "add") == 2 * V1
    assert poly_arith(V1, V2, "mul") == Poly2({(1, 1): 1})
    assert poly_arith(V1 + 1, V1 - 1, "mul") == V1**2 - 1


def test_shift_examples():
    assert shift_v2(V2**2, 1) == V2**2 - 2 * V2 + 1
    assert shift_v2(V1, 7) == V1
    # oracle: (v2 - 2)^3 by repeated multiplication
    assert shift_v2(V2**3, 2) == (V2 - 2) * (V2 - 2) * (V2 - 2)
    assert shift_v2(V2**3, 2).format() == "v2^3 - 6*v2^2 + 12*v2 - 8"


def test_derivative_examples():
    assert d_dv1(V1**2 * V2) == 2 * V1 * V2
    assert d_dv1(V2**3).is_zero()
    assert d_dv1((V1 + V2) ** 2) == 2 * V1 + 2 * V2


def test_divided_difference_examples():
    a = Scalar(Fraction(5, 3))
    assert divided_difference(t, a) == 1
    assert divided_difference(t**2, a) == t + a
    q = divided_difference(t**3 + t, 2)
    assert q == t**2 + 2 * t + 5
    # long-division oracle
    assert (t - 2) * q == t**3 + t - 10


def test_h_m_examples():
    h = t**3 - 2 * t + 1
    assert h_m(h, 3, 0).is_zero()
    assert h_m(h, 3, 1) == h
    a = Scalar(Fraction(7, 2))
    assert h_m(t, a, 2) == 2 * t - 2 * a


def test_h_identity_examples():
    assert check_h_identity(t**2, 1, 1, -1).passed
    assert check_h_identity(t**3, 2, 3, -2).passed
    res = check_h_identity(t**4 + SQRT2, HALF, 2, 2)
    assert res.passed and res.rhs.is_zero()


def test_h_identity_detects_wrong_family():
    # the identity pins down h_m; a residual shows up for a perturbed right side
    res = check_h_identity(t**2, 1, 1, 2)
    assert res.residual.is_zero()
    assert not (res.lhs - (res.rhs + 1)).is_zero()


def test_substitute_examples():
    assert substitute(V1 + V2, (HALF, 2), HALF) == HALF * V1**2 + HALF * V2
    assert substitute(V1**2, (HALF, 2), 1) == Scalar(Fraction(1, 4)) * V1**4
    assert substitute(V1 * V2, (HALF, 2), HALF) == Scalar(Fraction(1, 4)) * V1**2 * V2


def test_format_order():
    p = Poly2({(0, 0): 1, (1, 1): Scalar(Fraction(3, 2)), (2, 0): SQRT2, (0, 2): -1})
    assert p.format() == "sqrt2*v1^2 + 3/2*v1*v2 - v2^2 + 1"
    assert Poly2({(1, 0): Scalar(1, 1)}).format(("t", "s")) == "(1 + sqrt2)*t"
    assert Poly2().format() == "0"


def test_no_zero_coefficients_stored():
    p = V1 + V2 - V1
    assert set(p.monomials()) == {(0, 1)}


@given(polys(), polys())
def test_shift_is_ring_homomorphism(p, q):
    m = Scalar(Fraction(3, 2))
    assert shift_v2(p * q, m) == shift_v2(p, m) * shift_v2(q, m)
    assert shift_v2(p + q, m) == shift_v2(p, m) + shift_v2(q, m)


@given(polys(), scalars)
def test_shift_inverse(p, m):
    assert shift_v2(shift_v2(p, m), -m) == p


@given(polys(), scalars)
def test_derivative_commutes_with_shift(p, m):
    assert d_dv1(shift_v2(p, m)) == shift_v2(d_dv1(p), m)


@given(polys(), polys())
def test_leibniz(p, q):
    assert d_dv1(p * q) == d_dv1(p) * q + p * d_dv1(q)


@given(polys(univariate=True, max_e1=5), scalars)
def test_divided_difference_identity(h, a):
    q = divided_difference(h, a)
    assert q * (t - a) + h.eval_v1(a) == h


@given(polys(univariate=True, max_e1=4), st.sampled_from(ALPHAS), st.integers(-4, 4), st.integers(-4, 4))
def test_h_identity_property(h, a, m, n):
    assert check_h_identity(h, a, m, n).passed


@given(polys(), st.lists(scalars, min_size=1, max_size=4))
def test_combine_matches_naive_sum(p, cs):
    items = [(c, p * (k + 1)) for k, c in enumerate(cs)]
    naive = Poly2()
    for c, q in items:
        naive = naive + q * c
    assert Poly2.combine(items) == naive
