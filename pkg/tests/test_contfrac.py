import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.contfrac import (
    ContinuedFraction,
    check_best_approx_lemma,
    convergents,
    dist_bracket,
    expand_rational,
    generate_cf,
    generate_cf_capped,
    intermediate_fractions,
    parse_cf,
    psi_growth_test,
    value_bracket,
)
from dirichlet_lab.errors import DomainError, HorizonError


def test_expand_rational_examples():
    assert expand_rational(F(2, 7)).as_text() == "[0;3,2]"
    assert expand_rational(F(5)).as_text() == "[5]"
    assert expand_rational(F(355, 113)).as_text() == "[3;7,16]"


@given(st.fractions(min_value=-100, max_value=100, max_denominator=10**6))
def test_expand_rational_roundtrip(x):
    cf = expand_rational(x)
    assert cf.exact and cf.value() == x
    if cf.quotients:
        assert cf.quotients[-1] >= 2  # canonical form


def test_convergents_examples():
    t = convergents(parse_cf("[0;1,1,1,1,1]"))
    assert [(t.p[i], t.q[i]) for i in range(t.rows)] == [
        (0, 1), (1, 1), (1, 2), (2, 3), (3, 5), (5, 8),
    ]
    t = convergents(parse_cf("[1;2,2,2]"))
    assert [(t.p[i], t.q[i]) for i in range(t.rows)] == [(1, 1), (3, 2), (7, 5), (17, 12)]
    t = convergents(parse_cf("[0;3,2]"), rows=0)
    assert t.rows == 0


def test_convergents_horizon_and_generator_extension():
    cf = parse_cf("[0;3,2]")
    with pytest.raises(HorizonError):
        convergents(cf, rows=10)
    g = generate_cf("golden", 3)
    t = convergents(g, rows=8)  # rule extends on demand
    assert t.rows == 8 and t.q[7] == 21


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**5))
def test_determinant_and_gcd_invariants(x):
    t = convergents(expand_rational(x))
    for n in range(t.rows - 1):
        det = t.p[n] * t.q[n + 1] - t.p[n + 1] * t.q[n]
        assert det in (-1, 1)
    for n in range(t.rows):
        assert math.gcd(t.p[n], t.q[n]) == 1
        if n >= 2:
            assert t.q[n] > t.q[n - 1]


@settings(max_examples=50)
@given(st.fractions(min_value=0, max_value=1, max_denominator=10**9))
def test_khinchin_sandwich_on_rational_proxies(x):
    """For deep-enough expansions, x sits strictly between consecutive
    convergents and 1/(2 q_n q_(n+1)) < |x - p_n/q_n| < 1/(q_n q_(n+1))."""
    t = convergents(expand_rational(x))
    for n in range(t.rows - 2):
        cn, cn1 = t.convergent(n), t.convergent(n + 1)
        assert min(cn, cn1) < x < max(cn, cn1)
        gap = abs(x - cn)
        assert F(1, 2 * t.q[n] * t.q[n + 1]) < gap < F(1, t.q[n] * t.q[n + 1])


def test_intermediate_fractions_examples():
    t = convergents(parse_cf("[1;2,2,2]"))
    assert intermediate_fractions(t, 1) == [(1, 4, 3), (2, 7, 5)]
    g = convergents(generate_cf("golden", 5))
    fracs = intermediate_fractions(g, 2)
    assert len(fracs) == 1 and F(fracs[0][1], fracs[0][2]) == g.convergent(3)
    with pytest.raises(DomainError):
        intermediate_fractions(t, 5)


def test_intermediates_match_mediant_chain():
    """Each intermediate is the mediant of its predecessor with c_n, i.e. the
    Stern-Brocot walk from c_(n-1) toward c_(n+1)."""
    t = convergents(expand_rational(F(2, 7)))
    for n in range(t.rows - 1):
        pm, qm = t.seeds_before(n)
        prev = (pm, qm)
        for r, p, q in intermediate_fractions(t, n):
            assert (p, q) == (prev[0] + t.p[n], prev[1] + t.q[n])
            prev = (p, q)
        assert F(prev[0], prev[1]) == t.convergent(n + 1)


def test_value_and_dist_brackets():
    g = generate_cf("golden", 40)
    t = convergents(g)
    lo, hi, strict = value_bracket(t)
    assert strict and lo < hi
    db = dist_bracket(t, 1, 2)
    assert db.strict and db.lo < db.hi
    assert db.definitely_greater(F(1, 10))
    exact = convergents(expand_rational(F(2, 7)))
    db = dist_bracket(exact, 1, 3)
    assert not db.strict and db.lo == db.hi == F(1, 21)


def test_lemma_witness_examples():
    sqrt2 = ContinuedFraction(1, (2,) * 60, exact=False)
    wit = check_best_approx_lemma(sqrt2, 4, 3)
    assert (wit.qn, wit.qn1) == (2, 5) and wit.n == 1

    golden = generate_cf("golden", 60)
    t = convergents(golden)
    for n in range(1, 6):  # convergents themselves have nearby witnesses
        wit = check_best_approx_lemma(golden, t.p[n], t.q[n])
        assert wit.n in (n - 1, n)

    two = generate_cf("constant:2", 60)
    wit = check_best_approx_lemma(two, 1, 2)  # p/q = first convergent
    assert wit.n == 1


def test_lemma_small_exhaustive():
    for cf, a0 in ((ContinuedFraction(1, (2,) * 50, exact=False), 1), (generate_cf("golden", 50), 0)):
        for q in range(1, 41):
            for p in range(a0 * q, (a0 + 1) * q + 1):
                if math.gcd(p, q) != 1:
                    continue
                wit = check_best_approx_lemma(cf, p, q)
                assert 2 * q > wit.qn


def test_lemma_errors():
    shallow = ContinuedFraction(1, (2, 2), exact=False)
    with pytest.raises(HorizonError):
        check_best_approx_lemma(shallow, 7, 5)  # bracket cannot separate c_2
    exact = expand_rational(F(2, 7))
    with pytest.raises(DomainError):
        check_best_approx_lemma(exact, 2, 7)  # p/q equals x


def test_psi_growth_examples():
    golden = convergents(generate_cf("golden", 50))
    assert psi_growth_test(golden, F(3), F(1)).verdict == "growth-poor"
    assert psi_growth_test(golden, F(2), F(1)).verdict == "growth-rich"

    liou = convergents(generate_cf("power:1", 9))
    rep = psi_growth_test(liou, F(3), F(1))
    assert rep.verdict == "growth-rich"
    # q_(n+1) = q_n * q_n + q_(n-1) >= q_n^2 at every row
    assert set(rep.satisfying) == set(range(rep.pair_count))


def test_generate_cf_examples():
    assert generate_cf("golden", 5).as_text() == "[0;1,1,1,1,1]"
    assert generate_cf("constant:2", 3).as_text() == "[0;2,2,2]"
    # power rule, m = 1: w_(n+1) = q_n gives [0;1,1,2,5,...]
    assert generate_cf("power:1", 4).as_text() == "[0;1,1,2,5]"
    with pytest.raises(DomainError):
        generate_cf("golden", 0)
    with pytest.raises(DomainError):
        generate_cf("fibonacci", 3)


def test_generate_cf_digit_cap():
    with pytest.raises(HorizonError) as exc:
        generate_cf("power:2", 30, digit_cap=40)
    partial = exc.value.partial
    assert partial.length >= 4
    capped = generate_cf_capped("power:2", 30, 40)
    assert capped.quotients == partial.quotients
    t = convergents(capped)
    assert len(str(t.q[t.rows - 1])) <= 40


def test_parse_cf_forms():
    assert parse_cf("[5]").exact and parse_cf("[5]").value() == 5
    assert parse_cf("[-2;1,3]").exact
    assert not parse_cf("[0;1,1,1]").exact  # trailing 1: prefix semantics
    with pytest.raises(DomainError):
        parse_cf("0;1,2")
    with pytest.raises(DomainError):
        parse_cf("[0;1,0]")
