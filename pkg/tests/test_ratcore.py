import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.errors import DomainError
from dirichlet_lab.ratcore import (
    ExponentPair,
    RatVec,
    WeightedValue,
    ceil_pow,
    cmp_weighted,
    dist_max,
    iroot_floor,
    nearest_rep,
    parse_rational,
    reduce,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=1000
)
small_exponents = st.fractions(min_value=-2, max_value=2, max_denominator=6)


def test_reduce_examples():
    assert reduce(4, 6) == F(2, 3)
    assert reduce(-2, -4) == F(1, 2)
    assert reduce(0, 7) == F(0)
    with pytest.raises(DomainError):
        reduce(1, 0)


def test_parse_rational_strict():
    assert parse_rational("-3/4") == F(-3, 4)
    assert parse_rational("+5") == F(5)
    for bad in ("1.5", "1/2/3", " 1/2", "1 /2", "a", "1/-2"):
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_dist_max_examples():
    assert dist_max(RatVec.of(F(1, 2), F(1, 3)), RatVec.of(0, 0)) == F(1, 2)
    v = RatVec.of(F(3, 7), F(-1, 5))
    assert dist_max(v, v) == 0
    assert dist_max(RatVec.of(F(2, 7)), RatVec.of(F(1, 3))) == F(1, 21)
    with pytest.raises(DomainError):
        dist_max(RatVec.of(1), RatVec.of(1, 2))


@given(st.lists(rationals, min_size=1, max_size=3), st.data())
def test_dist_max_triangle_and_symmetry(coords, data):
    d = len(coords)
    x = RatVec(tuple(coords))
    y = RatVec(tuple(data.draw(rationals) for _ in range(d)))
    z = RatVec(tuple(data.draw(rationals) for _ in range(d)))
    assert dist_max(x, y) == dist_max(y, x)
    assert dist_max(x, z) <= dist_max(x, y) + dist_max(y, z)


def test_nearest_rep_examples():
    rep, norm = nearest_rep(RatVec.of(F(2, 7)), 3)
    assert rep.coords == (F(-1, 7),) and norm == F(1, 7)
    rep, norm = nearest_rep(RatVec.of(F(2, 7)), 2)
    assert rep.coords == (F(-3, 7),) and norm == F(3, 7)
    rep, norm = nearest_rep(RatVec.of(F(1, 2)), 1)
    assert rep.coords == (F(1, 2),) and norm == F(1, 2)


@given(
    st.lists(st.fractions(min_value=0, max_value=1, max_denominator=400), min_size=1, max_size=3),
    st.integers(min_value=1, max_value=50),
)
def test_nearest_rep_is_minimal(coords, q):
    from itertools import product

    x = RatVec(tuple(coords))
    rep, norm = nearest_rep(x, q)
    assert norm == max(abs(c) for c in rep) <= F(1, 2)
    for c, r in zip(x, rep):
        assert (q * c - r).denominator == 1  # rep is in qx + Z^d
    for offsets in product((-1, 0, 1), repeat=x.dim):
        shifted = [c + m for c, m in zip(rep, offsets)]
        assert max(abs(c) for c in shifted) >= norm


def test_cmp_weighted_examples():
    assert cmp_weighted(3, 5, F(1, 21), ExponentPair(1, 1), F(1)) == -1
    assert cmp_weighted(1, 1, F(1), ExponentPair(0, 0), F(1)) == 0
    assert cmp_weighted(4, 64, F(1, 64), ExponentPair(F(1, 2), F(2, 3)), F(1, 8)) == 1


@settings(max_examples=200)
@given(
    st.integers(min_value=1, max_value=10**4),
    st.integers(min_value=1, max_value=10**4),
    st.fractions(min_value=0, max_value=2, max_denominator=10**4),
    small_exponents,
    small_exponents,
    st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=1000),
)
def test_cmp_weighted_matches_longdouble(q, Q, dist, a, A, threshold):
    """Exact ordering agrees with extended-precision floats whenever the
    float margin is comfortably above rounding noise."""
    got = cmp_weighted(q, Q, dist, ExponentPair(a, A), threshold)
    ld = np.longdouble
    approx = ld(q) ** ld(float(a)) * ld(Q) ** ld(float(A)) * ld(
        dist.numerator
    ) / ld(dist.denominator)
    thr = ld(threshold.numerator) / ld(threshold.denominator)
    if thr == 0:
        return
    margin = abs(approx - thr) / thr
    if margin > 2.0 ** (-40):
        assert got == (1 if approx > thr else -1)


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=12))
def test_iroot_floor(n, k):
    r = iroot_floor(n, k)
    assert r**k <= n < (r + 1) ** k


@given(st.integers(min_value=1, max_value=10**6), st.fractions(min_value=0, max_value=3, max_denominator=8))
def test_ceil_pow(Q, expo):
    n = ceil_pow(Q, expo)
    u, v = expo.numerator, expo.denominator
    assert (n - 1) ** v < Q**u <= n**v


def test_ceil_pow_exact_powers_not_misrounded():
    assert ceil_pow(64, F(2, 3)) == 16
    assert ceil_pow(64, F(1, 3)) == 4
    assert ceil_pow(100, F(1, 2)) == 10
    assert ceil_pow(10**12, F(1, 3)) == 10**4


def test_weighted_value_decimal_and_alignment():
    w = WeightedValue.from_parts(4, 64, F(1, 64), ExponentPair(F(1, 2), F(2, 3)))
    # 2 * 16 / 64 = 1/2 exactly
    assert w.cmp_rational(F(1, 2)) == 0
    assert w.to_decimal(12) == "0.500000000000"
    other = WeightedValue.from_rational(F(1, 2), 3)
    assert w.cmp(other) == 0
    assert w.scale_by_rational(F(2)).cmp_rational(F(1)) == 0
    assert w.scale_by_power(4, F(1, 2)).cmp_rational(F(1)) == 0


def test_weighted_value_float_handles_huge_powers():
    w = WeightedValue.from_parts(10**40, 10**40, F(1), ExponentPair(2, 3))
    assert abs(w.to_float() - 1e200) < 1e188
    huge = WeightedValue.from_parts(10**200, 10**200, F(1), ExponentPair(2, 3))
    assert huge.to_float() == math.inf
    tiny = WeightedValue.from_parts(10**40, 10**40, F(1, 10**500), ExponentPair(0, 0))
    assert tiny.to_float() == 0.0


def test_vector_text_roundtrip():
    v = RatVec.from_text("1/20,1/200")
    assert v.as_text() == "1/20,1/200"
    assert v.common_denominator() == 200
