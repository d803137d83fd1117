from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superbms.algebra import C1, C2, Element, G, L, Sector, W, generators
from superbms.errors import (
    InconsistentOracle,
    KindMismatch,
    MissingSqrtLambda,
    SectorMismatch,
    SqrtMismatch,
)
from superbms.modules import (
    ModuleParams,
    QuotientVector,
    SuperVector,
    act_ns,
    act_ramond,
    act_restricted,
    check_transport,
    extract_params,
    module_for,
    project_to_quotient,
    psi,
    psi_inverse,
    quotient_act,
    transport_h,
)
from superbms.poly import V1, V2, Poly2, h_m
from superbms.scalar import HALF, SQRT2, Scalar

from conftest import polys

R, NS = Sector.R, Sector.NS
t = V1
u, s = V1, V2
ONE_R = SuperVector.one(R)
T_R = SuperVector.one_odd(R)
half = Fraction(1, 2)


def params(lam=1, alpha=1, h=Poly2(), sector=R, root=None):
    return ModuleParams(Scalar(lam) if not isinstance(lam, Scalar) else lam, alpha, h, sector, root)


def test_ramond_examples():
    lam, alpha = Scalar(3), Scalar(Fraction(2, 5))
    p = params(lam, alpha, t**2 + 1)
    assert act_ramond(p, W(1), ONE_R) == SuperVector(R, (u - alpha) * lam)
    f = SuperVector(R, u**2 * s + s**3)
    assert act_ramond(p, L(0), f) == SuperVector(R, s * f.even)
    assert act_ramond(p, G(0), T_R) == SuperVector(R, u)
    assert act_ramond(p, G(2), ONE_R) == SuperVector(R, 0, lam**2)


def test_ramond_formulas_on_general_vector():
    lam, alpha, h = Scalar(2), Scalar(1), t**2
    p = params(lam, alpha, h)
    f = u**2 * s + 3 * u
    m = 2
    fm = f.shift_v2(m)
    hm = h_m(h, alpha, m)
    even = lam**m * ((s + hm) * fm - m * (u - m * alpha) * fm.d_dv1())
    odd = lam**m * ((s - Fraction(m, 2) + hm) * fm - m * (u - m * alpha) * fm.d_dv1())
    assert act_ramond(p, L(m), SuperVector(R, f)) == SuperVector(R, even)
    assert act_ramond(p, L(m), SuperVector(R, 0, f)) == SuperVector(R, 0, odd)
    assert act_ramond(p, G(m), SuperVector(R, 0, f)) == SuperVector(R, lam**m * (u - 2 * m * alpha) * fm)
    assert act_ramond(p, C1() + C2(), SuperVector(R, f, f)) == 0


def test_ns_examples():
    lam = Scalar(4)
    p = params(lam, 1, t, NS, Scalar(2))
    one, odd_one = SuperVector.one(NS), SuperVector.one_odd(NS)
    assert act_ns(p, G(half), one) == odd_one
    assert act_ns(p, G(half), odd_one) == SuperVector(NS, lam * (t - 1))
    k = SuperVector(NS, 0, V1**2 * V2 + 1)
    assert act_ns(p, L(0, NS), k) == SuperVector(NS, 0, V2 * k.odd)
    # lambda^(r - 1/2) for r = 5/2 is lambda^2
    assert act_ns(p, G(Fraction(5, 2)), one) == SuperVector(NS, 0, lam**2)


def test_ns_requires_square_root():
    p = params(4, 1, t, NS)
    with pytest.raises(MissingSqrtLambda):
        act_ns(p, G(half), SuperVector.one(NS))
    with pytest.raises(SqrtMismatch):
        params(4, 1, t, NS, Scalar(3))


def test_sector_and_kind_guards():
    p = params()
    with pytest.raises(SectorMismatch):
        act_ramond(p, L(1, NS), ONE_R)
    with pytest.raises(KindMismatch):
        act_ramond(p, L(1), SuperVector.one(NS))
    with pytest.raises(SectorMismatch):
        act_ns(p, L(1, NS), SuperVector.one(NS))
    with pytest.raises(ValueError):
        params(0)


def test_freeness_witness():
    p = params(Scalar(2), Scalar(1), t**2)
    assert act_ramond(p, L(0), ONE_R) == SuperVector(R, s)
    assert act_ramond(p, W(0), ONE_R) == SuperVector(R, u)
    assert act_ramond(p, G(0), ONE_R) == T_R


def test_restricted_action():
    p = params(Scalar(3), Scalar(1), t)
    assert act_restricted(p, L(1, NS), ONE_R) == act_ramond(p, L(2), ONE_R) * HALF
    f = u * s + 1
    lam = Scalar(3)
    want = SuperVector(R, 0, f.shift_v2(1) * lam * SQRT2 * HALF)
    assert act_restricted(p, G(half), SuperVector(R, f)) == want
    assert act_restricted(p, C1(NS), SuperVector(R, f, f)) == 0


def test_psi_examples():
    p = params(4, 1, Poly2(), NS, Scalar(2))
    assert psi(p, SuperVector.one(NS)) == ONE_R
    assert psi(p, SuperVector(NS, V2)) == SuperVector(R, HALF * s)
    assert psi(p, SuperVector.one_odd(NS)) == SuperVector(R, 0, SQRT2)
    with pytest.raises(MissingSqrtLambda):
        psi(params(4, 1, Poly2(), NS), SuperVector.one(NS))


def test_transport_examples():
    a = Scalar(Fraction(3, 2))
    assert transport_h(Poly2(), a).is_zero()
    assert transport_h(t, a) == 2 * u - a
    assert transport_h(Poly2.const(5), a) == Poly2.const(5)


@given(polys(univariate=True, max_e1=4), st.sampled_from([0, 1, -2, half, SQRT2]))
def test_transport_condition_holds(h, alpha):
    g = transport_h(h, alpha)
    assert check_transport(h, g, alpha, 4) is None


def test_transport_condition_detects_wrong_g():
    h = t**2
    assert check_transport(h, t**2, 1, 4) is not None


def test_g0_squared_is_w0():
    p = params(Scalar(2), SQRT2, t**2 + t)
    for v in [ONE_R, T_R, SuperVector(R, u**2 * s, s**3 + u)]:
        assert act_ramond(p, G(0), act_ramond(p, G(0), v)) == act_ramond(p, W(0), v)


def test_quotient_examples():
    p = params(Scalar(2), 0, Poly2.const(3))
    g = V2**2 + 1
    assert quotient_act(p, L(0), QuotientVector(1, g)) == QuotientVector(1, V2 * g)
    assert quotient_act(p, W(5), QuotientVector(1, g)) == QuotientVector(1, Poly2())
    # h(0) - i = 2
    assert quotient_act(p, L(1), QuotientVector(1)) == QuotientVector(1, Scalar(2) * (V2 + 2))
    assert quotient_act(p, G(1), QuotientVector(1, g)).g.is_zero()


@pytest.mark.parametrize("h", [Poly2(), Poly2.const(2), t, t**2 + 1])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_quotient_agrees_with_projection(h, i):
    p = params(Scalar(2), 0, h)
    for g in generators(R, 6):
        if g.kind.name == "G":
            continue
        x = Element(R, {g: 1})
        for k in range(3):
            rep = SuperVector(R, Poly2.monomial(i, k))
            image = act_ramond(p, x, rep)
            assert project_to_quotient(image, i) == quotient_act(p, x, QuotientVector(i, Poly2.monomial(0, k)))


def test_extract_examples():
    p = params(Scalar(3), Scalar(1), t**2)
    assert extract_params(module_for(p).act, R) == (Scalar(3), Scalar(1), t**2)
    p0 = params(Scalar(1), Scalar(0), Poly2())
    assert extract_params(module_for(p0).act, R) == (Scalar(1), Scalar(0), Poly2())


def test_extract_ns():
    p = params(Scalar(2), SQRT2, t**2 + 1, NS, SQRT2)
    assert extract_params(module_for(p).act, NS) == (Scalar(2), SQRT2, t**2 + 1)


def test_extract_rejects_corrupted_oracle():
    p = params(Scalar(3), Scalar(1), t**2)
    mod = module_for(p)

    def bad_w(x, v):
        out = mod.act(x, v)
        if x == W(1):
            return out + SuperVector(R, s)
        return out

    with pytest.raises(InconsistentOracle):
        extract_params(bad_w, R)

    def bad_l2(x, v):
        out = mod.act(x, v)
        if x == L(2):
            return out + SuperVector(R, u)
        return out

    with pytest.raises(InconsistentOracle):
        extract_params(bad_l2, R)


@given(polys(), polys())
def test_psi_round_trip(f, k):
    p = params(Scalar(Fraction(1, 4)), 0, Poly2(), NS, HALF)
    v = SuperVector(NS, f, k)
    assert psi_inverse(p, psi(p, v)) == v


@given(polys(), polys(), st.sampled_from(generators(R, 4)))
def test_action_is_linear(f, k, g):
    p = params(Scalar(2), Scalar(1), t)
    x = Element(R, {g: 1})
    v, w = SuperVector(R, f, k), SuperVector(R, k, f)
    assert act_ramond(p, x, v + w) == act_ramond(p, x, v) + act_ramond(p, x, w)
    assert act_ramond(p, x, v * 3) == act_ramond(p, x, v) * 3
