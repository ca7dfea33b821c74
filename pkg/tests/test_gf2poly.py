from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdcut.gf2poly import (
    Layout,
    PolyOverflowError,
    ZERO_EXP,
    add,
    coeff,
    dump,
    from_monomials,
    live_counter,
    monomial,
    mul,
    mul_monomial,
    poly_one,
    poly_zero,
    weight_slice,
)

# big enough that products of three random polys below never overflow
LAY = Layout(w=40, x=9, e=6, m=3)
SMALL = (10, 3, 2, 1)


def exps():
    return st.tuples(*(st.integers(0, b) for b in SMALL))


def polys():
    return st.lists(exps(), max_size=8).map(lambda es: from_monomials(LAY, es))


def naive_mul(p, q):
    """Double loop over the monomial sets, toggling each exponent sum."""
    out = set()
    for a, b in product(p.monomials(), q.monomials()):
        out ^= {tuple(x + y for x, y in zip(a, b))}
    return from_monomials(LAY, out)


def X(k=1):
    return monomial(LAY, (0, k, 0, 0))


class TestConstants:
    def test_zero_one(self):
        assert len(poly_zero(LAY)) == 0
        assert list(poly_one(LAY).monomials()) == [ZERO_EXP]
        assert add(poly_one(LAY), poly_one(LAY)) == poly_zero(LAY)

    def test_cancellation(self):
        a = from_monomials(LAY, [(2, 1, 0, 0), ZERO_EXP])
        b = from_monomials(LAY, [(2, 1, 0, 0)])
        assert add(a, b) == poly_one(LAY)

    def test_products(self):
        assert mul(X(), X()) == X(2)
        one_plus_x = add(poly_one(LAY), X())
        assert mul(one_plus_x, one_plus_x) == add(poly_one(LAY), X(2))

    def test_shift(self):
        p = from_monomials(LAY, [(1, 2, 0, 0), (3, 0, 1, 1)])
        assert mul_monomial(p, ZERO_EXP) == p
        assert mul_monomial(poly_one(LAY), (5, 1, 0, 0)) == monomial(LAY, (5, 1, 0, 0))

    def test_coeff(self):
        assert coeff(poly_one(LAY), ZERO_EXP) == 1
        assert coeff(poly_zero(LAY), (3, 1, 0, 0)) == 0
        assert coeff(monomial(LAY, (2, 1, 0, 0)), (2, 1, 0, 0)) == 1
        assert coeff(poly_one(LAY), (99, 0, 0, 0)) == 0

    def test_weight_slice(self):
        p = from_monomials(LAY, [(3, 2, 0, 0), (5, 2, 0, 0), (4, 1, 0, 0)])
        assert weight_slice(p, x=2) == (1 << 3) | (1 << 5)
        assert weight_slice(p, x=1) == 1 << 4
        assert weight_slice(p, x=50) == 0

    def test_dump_sorted(self):
        p = from_monomials(LAY, [(3, 1, 0, 0), (0, 0, 0, 0), (1, 2, 0, 1)])
        assert dump(p) == "0 0 0 0\n1 2 0 1\n3 1 0 0\n"

    def test_repeats_cancel(self):
        assert from_monomials(LAY, [(1, 1, 0, 0)] * 2) == poly_zero(LAY)


class TestBounds:
    def test_pack_unpack(self):
        for exp in [(0, 0, 0, 0), (40, 9, 6, 3), (7, 0, 5, 2)]:
            assert LAY.unpack(LAY.pack(exp)) == exp

    def test_monomial_out_of_range(self):
        with pytest.raises(PolyOverflowError):
            monomial(LAY, (41, 0, 0, 0))

    def test_mul_overflow(self):
        lay = Layout(w=4, x=2)
        p = monomial(lay, (3, 1, 0, 0))
        with pytest.raises(PolyOverflowError):
            mul(p, p)

    def test_shift_overflow(self):
        lay = Layout(w=4, x=2)
        with pytest.raises(PolyOverflowError):
            mul_monomial(monomial(lay, (0, 2, 0, 0)), (0, 1, 0, 0))

    def test_layout_mismatch(self):
        with pytest.raises(ValueError):
            add(poly_one(LAY), poly_one(Layout(w=3)))


def test_live_counter():
    with live_counter() as live:
        a = poly_one(LAY)
        b = mul(a, a)
        assert live.live == 2
        del a, b
        assert live.live == 0 and live.peak >= 2


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert add(p, q) == add(q, p)
    assert add(add(p, q), r) == add(p, add(q, r))
    assert mul(p, q) == mul(q, p)
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))
    assert add(p, p) == poly_zero(LAY)
    assert add(p, poly_zero(LAY)) == p
    assert mul(poly_one(LAY), p) == p


@settings(max_examples=300, deadline=None)
@given(polys(), polys())
def test_mul_matches_naive(p, q):
    assert mul(p, q) == naive_mul(p, q)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), exps())
def test_shift_distributes(p, q, s):
    assert mul_monomial(add(p, q), s) == add(mul_monomial(p, s), mul_monomial(q, s))
    assert mul_monomial(p, s) == mul(p, monomial(LAY, s))
