from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3cones.errors import MixedRadicand, NegativeRadicand
from k3cones.qfield import (
    SQUAREFREE_CERTIFIED,
    QuadElem,
    qe,
    qe_arith,
    qe_cmp,
    qe_sqrt,
    sign,
    square_reduce,
    symbolic,
    to_decimal,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
nonneg = st.fractions(min_value=0, max_value=500, max_denominator=60)
radicands = st.integers(min_value=0, max_value=400)


@st.composite
def quad_elems(draw, m=None):
    return QuadElem(draw(rationals), draw(rationals), draw(radicands) if m is None else m)


def is_squarefree(n):
    return all(n % (p * p) for p in range(2, int(n ** 0.5) + 1))


def test_rational_addition():
    assert qe_arith("add", Fraction(1, 2), qe(Fraction(1, 2))) == 1


def test_sqrt2_squared():
    r2 = qe(0, 1, 2)
    out = qe_arith("mul", r2, r2)
    assert out.is_rational and out.rational() == 2


def test_like_terms():
    assert qe_arith("sub", qe(2, 3, 5), qe(2, 1, 5)) == qe(0, 2, 5)


def test_mixed_product_rejected():
    with pytest.raises(MixedRadicand):
        qe_arith("mul", qe(0, 1, 2), qe(0, 1, 3))
    with pytest.raises(MixedRadicand):
        qe_arith("add", qe(1, 1, 2), qe(0, 1, 3))


def test_radicands_differing_by_square_combine():
    # sqrt(8) and sqrt(2) live in the same field
    assert qe(0, 1, 8) + qe(0, 1, 2) == qe(0, 3, 2)


@pytest.mark.parametrize("r, expected", [
    (4, QuadElem(2)),
    (Fraction(70, 9), QuadElem(0, Fraction(1, 3), 70)),
    (8, QuadElem(0, 2, 2)),
    (0, QuadElem(0)),
    (Fraction(9, 4), QuadElem(Fraction(3, 2))),
])
def test_qe_sqrt_examples(r, expected):
    got = qe_sqrt(r)
    assert (got.a, got.b, got.m) == (expected.a, expected.b, expected.m)


def test_qe_sqrt_negative():
    with pytest.raises(NegativeRadicand):
        qe_sqrt(-1)


def test_cmp_examples():
    assert qe_cmp(qe_sqrt(2), Fraction(3, 2)) == -1
    x = (qe_sqrt(70) - 4) / 3
    assert qe_cmp(x, qe_sqrt(2)) == 1
    seven = 2 / qe_sqrt(7)
    assert qe_cmp(seven, qe(0, Fraction(2, 7), 7)) == 0


def test_record_fields_are_canonical():
    x = 2 / qe_sqrt(7)
    assert (x.a, x.b, x.m) == (0, Fraction(2, 7), 7)
    y = qe(3, 0, 11)
    assert (y.a, y.b, y.m) == (3, 0, 0)
    z = qe(1, 5, 0)
    assert (z.a, z.b, z.m) == (1, 0, 0)


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_square_reduce_is_exact(m):
    s, f = square_reduce(m)
    assert s * s * f == m
    assert is_squarefree(f)


def test_square_reduce_large_cofactors():
    p = 1_000_003  # prime above the trial-division limit
    assert square_reduce(12 * p * p) == (2 * p, 3)
    assert square_reduce(p * 7) == (1, 7 * p)
    assert 7 * p < SQUAREFREE_CERTIFIED


@given(nonneg, nonneg)
def test_sqrt_order_matches_radicand_order(p, q):
    expected = (p > q) - (p < q)
    assert qe_cmp(qe_sqrt(p), qe_sqrt(q)) == expected


@given(nonneg)
def test_sqrt_squares_back(r):
    s = qe_sqrt(r)
    sq = qe_arith("mul", s, s)
    assert sq.is_rational and sq.rational() == r


@given(quad_elems())
def test_normalisation_idempotent(x):
    y = QuadElem(x.a, x.b, x.m)
    assert (y.a, y.b, y.m) == (x.a, x.b, x.m)
    if x.b:
        assert is_squarefree(x.m) and x.m > 1
    else:
        assert x.m == 0


@given(st.integers(min_value=2, max_value=300), rationals, rationals, rationals, rationals)
def test_field_operations(m, a1, b1, a2, b2):
    x, y = QuadElem(a1, b1, m), QuadElem(a2, b2, m)
    assert x + y - y == x
    assert (x * y) == (y * x)
    if y:
        assert (x / y) * y == x
    assert x * x.conjugate() == x.norm()


@given(quad_elems())
def test_sign_matches_float(x):
    f = mpmath.mpf(x.a.numerator) / x.a.denominator
    if x.b:
        f += mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.m)
    if abs(f) > mpmath.mpf(10) ** -20:
        assert sign(x) == (1 if f > 0 else -1)


def _oracle(x: QuadElem):
    v = mpmath.mpf(x.a.numerator) / x.a.denominator
    if x.b:
        v += mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.m)
    return v


def test_cross_radicand_against_decimal_oracle():
    """10^4 random pairs checked against 200-digit evaluation."""
    rng = random.Random(20261015)

    def draw():
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        return QuadElem(a, b, rng.randint(0, 200))

    with mpmath.workdps(200):
        for _ in range(10_000):
            x, y = draw(), draw()
            if rng.random() < 0.05:
                y = QuadElem(x.a, x.b, x.m)
            diff = _oracle(x) - _oracle(y)
            if abs(diff) < mpmath.mpf(10) ** -150:
                expected = 0
            else:
                expected = 1 if diff > 0 else -1
            assert qe_cmp(x, y) == expected, (x, y)


def test_near_ties_across_fields():
    # (1 + sqrt 2)^2 = 3 + 2 sqrt 2 vs 29/5
    assert qe_cmp(qe(1, 1, 2), qe_sqrt(Fraction(29, 5))) == 1
    assert qe_cmp(qe(1, 1, 2), qe_sqrt(Fraction(5828, 1000))) == 1
    assert qe_cmp(qe(1, 1, 2), qe_sqrt(Fraction(5829, 1000))) == -1
    x = qe(Fraction(99, 70))
    assert qe_cmp(x, qe_sqrt(2)) == 1
    assert qe_cmp(Fraction(140, 99), qe_sqrt(2)) == -1


@pytest.mark.parametrize("x, text", [
    ((qe_sqrt(70) - 4) / 3, "(√70-4)/3"),
    (2 / qe_sqrt(7), "2√7/7"),
    (qe_sqrt(8), "2√2"),
    (qe_sqrt(5) - 1, "√5-1"),
    (QuadElem(Fraction(4, 3)), "4/3"),
    (-qe_sqrt(3), "-√3"),
])
def test_symbolic(x, text):
    assert symbolic(x) == text


def test_decimal_rendering():
    x = (qe_sqrt(70) - 4) / 3
    assert to_decimal(x, 20) == "1.45553342178025182659"
    assert to_decimal(Fraction(-1, 3), 5) == "-0.33333"
    assert to_decimal(qe_sqrt(2), 3) == "1.414"


@settings(max_examples=300)
@given(quad_elems(), quad_elems())
def test_decimal_never_contradicts_order(x, y):
    dx, dy = Fraction(to_decimal(x, 12)), Fraction(to_decimal(y, 12))
    c = qe_cmp(x, y)
    if c < 0:
        assert dx <= dy
    elif c > 0:
        assert dx >= dy
    else:
        assert dx == dy


def test_hash_consistent_with_equality():
    assert hash(qe(0, 1, 8)) == hash(qe(0, 2, 2))
    assert {qe(0, 1, 8), qe(0, 2, 2), QuadElem(2)} == {qe(0, 2, 2), qe_sqrt(4)}
