import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from knotwork.polynomials import (
    LaurentPoly, RationalFunction, SparseOperator, ExactDivisionError,
    exact_divide, vanish_order_at_1, mutant_product_polynomial,
    quantum_integer, ONE, ZERO, S,
)


def poly_q(d):
    return LaurentPoly.from_q(d)


small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9),
    max_size=6,
).map(LaurentPoly)


class TestLaurentBasics:
    def test_canonical_form_drops_zeros(self):
        p = LaurentPoly({2: 0, 1: 3, -1: 0})
        assert list(p.items()) == [(1, 3)]

    def test_q_expressible(self):
        assert poly_q({0: 1, 3: -2}).is_q_expressible()
        assert not (S + ONE).is_q_expressible()

    def test_pow_negative_unit(self):
        m = LaurentPoly.monomial(3, -1)
        assert m ** -2 == LaurentPoly.monomial(-6, 1)
        assert m ** -1 == LaurentPoly.monomial(-3, -1)
        with pytest.raises(ValueError):
            (ONE + S) ** -1

    def test_text_round_trip(self):
        p = poly_q({-2: 3, 1: 1, 3: 5})
        assert p.text() == "3*q^-2 + q + 5*q^3"
        assert LaurentPoly.parse(p.text()) == p
        odd = LaurentPoly({-1: 2, 1: -1})
        assert LaurentPoly.parse(odd.text()) == odd

    def test_quantum_integer(self):
        assert quantum_integer(2) == S + S ** -1
        assert quantum_integer(1) == ONE
        v = quantum_integer(5)
        assert v.evaluate(1) == 5


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + ZERO == a
    assert a * ONE == a


@settings(max_examples=200, deadline=None)
@given(small_polys, small_polys)
def test_exact_divide_round_trip(p, d):
    if d.is_zero():
        with pytest.raises(ZeroDivisionError):
            exact_divide(p, d)
        return
    assert exact_divide(p * d, d) == p


def test_exact_divide_examples():
    q = poly_q({1: 1})
    assert exact_divide(q * q - 1, q - 1) == q + 1
    p = poly_q({0: 2, 5: -3})
    assert exact_divide(p, ONE) == p
    with pytest.raises(ExactDivisionError) as exc:
        exact_divide(q + 1, q - 1)
    assert exc.value.remainder is not None


def test_exact_divide_thousand_random_pairs():
    rng = random.Random(7)
    for _ in range(1000):
        p = LaurentPoly({rng.randrange(-5, 6): rng.randrange(-9, 10)
                         for _ in range(rng.randrange(5))})
        d = ZERO
        while d.is_zero():
            d = LaurentPoly({rng.randrange(-5, 6): rng.randrange(-9, 10)
                             for _ in range(rng.randrange(1, 5))})
        assert exact_divide(p * d, d) == p


class TestVanishOrder:
    def test_basic(self):
        q = poly_q({1: 1})
        p = (1 - q) * (1 - q) * (1 + q)
        assert vanish_order_at_1(p) == 2

    def test_zero_gives_infinity(self):
        assert vanish_order_at_1(ZERO) == math.inf

    def test_rejects_odd_exponents(self):
        with pytest.raises(ValueError):
            vanish_order_at_1(S + ONE)

    def test_multiplicativity(self):
        rng = random.Random(3)
        q = poly_q({1: 1})
        for _ in range(50):
            a = poly_q({rng.randrange(0, 4): rng.randrange(1, 5)}) + 1
            b = poly_q({rng.randrange(0, 4): rng.randrange(1, 5)}) + 1
            ka, kb = rng.randrange(0, 3), rng.randrange(0, 3)
            pa = a * (1 - q) ** ka
            pb = b * (1 - q) ** kb
            if pa.is_zero() or pb.is_zero():
                continue
            assert (vanish_order_at_1(pa * pb)
                    == vanish_order_at_1(pa) + vanish_order_at_1(pb))


def _expand_product_oracle():
    """Independent expansion of the known mutant-quotient factors using
    plain list convolution in q."""
    def conv(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def power(base, n):
        out = [1]
        for _ in range(n):
            out = conv(out, base)
        return out

    result = [0] * 8 + [1]                     # q^8
    for base, n in [
        ([-1, 1], 11),
        ([1, 1], 11),
        ([1, 0, 1], 3),
        ([1, -1, 1], 3),
        ([1, 1, 1], 3),
        ([1, 0, 0, 0, 1], 2),
        ([1, 0, -1, 0, 1], 1),
        ([1, -1, 1, -1, 1, -1, 1], 2),
        ([1, 1, 1, 1, 1, 1, 1], 2),
        ([1, 0, 0, 0, 0, 0, 0, 0, 1], 1),
        ([1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1], 1),
    ]:
        result = conv(result, power(base, n))
    return result


class TestMutantProduct:
    def test_matches_independent_expansion(self):
        expected = _expand_product_oracle()
        got = mutant_product_polynomial()
        coeffs = dict(got.q_items())
        for e, c in enumerate(expected):
            assert coeffs.get(e, 0) == c
        assert all(0 <= e < len(expected) for e in coeffs)

    def test_vanish_order_is_eleven(self):
        p = mutant_product_polynomial()
        assert vanish_order_at_1(p) == 11

    def test_value_structure_at_one(self):
        p = mutant_product_polynomial()
        assert p.evaluate(1) == 0
        q = poly_q({1: 1})
        reduced = p
        for _ in range(11):
            reduced = exact_divide(reduced, 1 - q)
        assert reduced.evaluate(1) != 0

    def test_lowest_term(self):
        p = mutant_product_polynomial()
        e, c = next(iter(p.items()))
        assert e == 16 and c == -1  # q^8 * (-1)^11 leading low term


class TestRationalFunction:
    def test_reduction(self):
        q = poly_q({1: 1})
        r = RationalFunction(q * q - 1, q - 1)
        assert r.is_polynomial()
        assert r.as_poly() == q + 1

    def test_cross_multiplication_equality(self):
        rng = random.Random(11)
        for _ in range(60):
            a = LaurentPoly({rng.randrange(-3, 4): rng.randrange(-5, 6)
                             for _ in range(rng.randrange(1, 4))})
            b = ZERO
            while b.is_zero():
                b = LaurentPoly({rng.randrange(-3, 4): rng.randrange(-5, 6)
                                 for _ in range(rng.randrange(1, 4))})
            m = ZERO
            while m.is_zero():
                m = LaurentPoly({rng.randrange(-2, 3): rng.randrange(-4, 5)
                                 for _ in range(rng.randrange(1, 3))})
            assert RationalFunction(a * m, b * m) == RationalFunction(a, b)

    def test_arithmetic(self):
        q = poly_q({1: 1})
        half = RationalFunction(ONE, q + 1)
        assert half + half == RationalFunction(2, q + 1)
        assert half * (q + 1) == RationalFunction(ONE)
        assert (half / half) == RationalFunction(ONE)

    def test_denominator_normalization(self):
        q = poly_q({1: 1})
        r = RationalFunction(q, -q + q * q)   # q / (q^2 - q) = 1/(q-1)
        assert r.den == q - 1
        assert r.num == ONE


class TestSparseOperator:
    def test_compose_identity(self):
        m = SparseOperator(2, 2, {(0, 1): S, (1, 0): S ** -1})
        eye = SparseOperator.identity(2)
        assert m.compose(eye) == m
        assert eye.compose(m) == m

    def test_compose(self):
        m = SparseOperator(2, 2, {(0, 1): S, (1, 0): S})
        sq = m.compose(m)
        assert sq[(0, 0)] == S * S
        assert sq[(1, 1)] == S * S
        assert (0, 1) not in sq.entries
