from hypothesis import given, strategies as st

from superbms.algebra import Sector
from superbms.linalg import SpanBasis, Truncation, span_insert, vectorize
from superbms.modules import SuperVector
from superbms.poly import V1, V2
from superbms.scalar import Scalar

from conftest import scalars

R = Sector.R


def test_vectorize_examples():
    tr = Truncation(1, 1)
    coords, overflow = vectorize(SuperVector(R), tr)
    assert not any(coords) and not overflow
    coords, overflow = vectorize(SuperVector(R, V1 * V2), tr)
    assert not overflow
    assert coords[tr.index[(False, (1, 1))]] == 1 and sum(1 for c in coords if c) == 1
    _, overflow = vectorize(SuperVector(R, V1**2), Truncation(1, 3))
    assert overflow


def test_basis_order():
    tr = Truncation(1, 1)
    assert tr.basis == (
        (False, (0, 0)),
        (False, (0, 1)),
        (False, (1, 0)),
        (False, (1, 1)),
        (True, (0, 0)),
        (True, (0, 1)),
        (True, (1, 0)),
        (True, (1, 1)),
    )
    assert Truncation(2, 2, include_odd=False).dim == 9


def test_span_examples():
    b = SpanBasis(2)
    one = [Scalar(1), Scalar(0)]
    assert span_insert(b, one)[1]
    assert not span_insert(b, one)[1]
    b = SpanBasis(2)
    b.insert([Scalar(1), Scalar(1)])
    b.insert([Scalar(1), Scalar(-1)])
    assert b.rank == 2
    assert b.rows() == [[1, 0], [0, 1]]


vectors = st.lists(st.lists(scalars, min_size=4, max_size=4), max_size=6)


@given(vectors)
def test_rref_invariants(vs):
    b = SpanBasis(4)
    for v in vs:
        b.insert(v)
    assert b.rank <= 4
    assert list(b.pivots) == sorted(set(b.pivots))
    for p, row in zip(b.pivots, b.rows()):
        assert row[p] == 1
        assert not any(row[:p])
    for p in b.pivots:
        assert sum(1 for row in b.rows() if row[p]) == 1
    for v in vs:
        assert b.contains(v)


@given(vectors)
def test_rref_is_canonical(vs):
    a, b = SpanBasis(4), SpanBasis(4)
    for v in vs:
        a.insert(v)
    for v in reversed(vs):
        b.insert([c * 3 for c in v])
    assert a.rows() == b.rows()
