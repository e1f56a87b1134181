import pytest
from hypothesis import given, settings, strategies as st

from chessboard_bisect.f2poly import (
    PolyRing, RingMismatchError, add, format_poly, graded_component, mul, parse_poly,
)
from chessboard_bisect.grasscoh import grassmannian_ring

R = grassmannian_ring(2, 1, with_t=True)  # w1 w2 wb1 t1 t2
w1, w2, wb1, t1, t2 = (R.gen(x) for x in ("w1", "w2", "wb1", "t1", "t2"))

monos = st.tuples(*[st.integers(0, 3)] * R.ngens)
polys = st.frozensets(monos, max_size=6).map(R.from_terms)


def test_addition_cancels():
    assert add(w1 + t1, t1) == w1
    assert add(w1, R.zero()) == w1
    assert add(t1 + t2, t1 + t2) == R.zero()


def test_products():
    assert mul(t1 + t2, t1 + t2) == t1 ** 2 + t2 ** 2
    assert mul(t1 + w1, t1 + wb1) == t1 ** 2 + t1 * (w1 + wb1) + w1 * wb1
    assert mul(w2 + t1, R.one()) == w2 + t1


def test_graded_components():
    assert graded_component(t2 + t2 ** 3, 1) == t2
    assert graded_component(R.zero(), 5) == R.zero()
    assert graded_component((t1 + t2) ** 2 * t2, 3) == t1 ** 2 * t2 + t2 ** 3
    with pytest.raises(ValueError):
        graded_component(t1, -1)


def test_weighted_degrees():
    assert w2.degrees() == {2}
    assert (w2 * t1 + w1 ** 3).is_homogeneous()
    assert not (w2 + w1).is_homogeneous()


def test_canonical_text():
    assert format_poly(t1 ** 2 * t2 + w1 * t2 ** 2) == "t1^2*t2 + w1*t2^2"
    assert format_poly(R.zero()) == "0"
    assert format_poly(R.one()) == "1"
    assert str(t1 + t2) == "t1 + t2"


def test_ring_mismatch():
    other = PolyRing(("x",), (1,))
    with pytest.raises(RingMismatchError):
        t1 + other.gen("x")


def test_integer_coercion():
    assert t1 + 1 == t1 + R.one()
    assert 3 * t1 == t1
    assert 2 * t1 == 0


def test_substitute():
    assert (t2 ** 2).substitute("t2", t1 + t2) == t1 ** 2 + t2 ** 2
    assert (w1 * t2).substitute("t2", R.one()) == w1


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + p == R.zero()
    assert p * R.one() == p


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_frobenius(p, q):
    assert (p + q) ** 2 == p ** 2 + q ** 2


@given(polys)
@settings(max_examples=60, deadline=None)
def test_graded_components_sum_to_whole(p):
    acc = R.zero()
    for dg in range(max(p.degrees(), default=0) + 1):
        acc = acc + p.graded_component(dg)
    assert acc == p


@given(polys)
@settings(max_examples=60, deadline=None)
def test_parse_roundtrip(p):
    assert parse_poly(R, format_poly(p)) == p
