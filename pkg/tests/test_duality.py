from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.bestapprox import dirichlet_quotient
from dirichlet_lab.contfrac import (
    check_best_approx_lemma,
    convergents,
    generate_cf,
    generate_cf_capped,
)
from dirichlet_lab.duality import (
    cf_quotient_bracket,
    check_implication_i,
    check_implication_ii,
    duality_params,
    grid_brackets,
    growth_bound_check,
    horizon_grid,
)
from dirichlet_lab.errors import DomainError
from dirichlet_lab.ratcore import RatVec


def test_duality_params_examples():
    p = duality_params(F(0), F(3, 2))
    assert (p.b, p.c, p.regime) == (F(1, 2), F(3), "strict")
    p = duality_params(F(-1), F(5, 2))
    assert (p.b, p.c, p.regime) == (F(1, 2), F(3), "strict")
    p = duality_params(F(1, 2), F(7, 5))
    assert (p.b, p.c, p.regime) == (F(2, 5), F(9, 4), "strict")
    p = duality_params(F(0), F(2))
    assert (p.b, p.c, p.regime) == (F(1), F(2), "boundary")


def test_duality_params_errors_name_the_inequality():
    with pytest.raises(DomainError, match="a < 1"):
        duality_params(F(1), F(2))
    with pytest.raises(DomainError, match="min"):
        duality_params(F(0), F(1))
    with pytest.raises(DomainError, match="c >= 2"):
        duality_params(F(0), F(3))  # b = 2, c = 3/2


def test_params_algebraic_simplifications():
    a = F(1, 4)
    for A in (F(3, 2), F(7, 4)):
        p = duality_params(a, A)
        assert p.b == A - 1 and p.c == (A - a) / (A - 1)
    a = F(-1, 2)
    for A in (F(2), F(9, 4)):
        p = duality_params(a, A)
        assert p.b == A + a - 1 and p.c == (A + a) / (A + a - 1)


def test_strict_regime_region():
    """c > 2 matches A + a < 2 for a <= 0 and A < 2 - a for 0 <= a < 1."""
    a = F(-2)
    while a < 1:
        A = F(9, 8)
        while A <= 3:
            ok_pre = a < 1 < min(A, A + a) and (A - abs(a)) >= 2 * (min(A, A + a) - 1)
            if ok_pre:
                p = duality_params(a, A)
                expect = (A + a < 2) if a <= 0 else (A < 2 - a)
                assert (p.c > 2) == expect
            A += F(1, 8)
        a += F(1, 8)


def test_growth_bound_check_examples():
    params = duality_params(F(0), F(3, 2))  # c - 1 = 2
    golden = convergents(generate_cf("golden", 50))
    rep = growth_bound_check(golden, params, F(1))
    assert rep.n0 == 2 and not rep.fails_cofinally  # only n = 1 fails

    power2 = convergents(generate_cf_capped("power:2", 30, 60))
    rep = growth_bound_check(power2, params, F(1))
    assert rep.fails_cofinally

    huge = F(10) ** 40
    rep = growth_bound_check(power2, params, huge)
    assert rep.n0 == 0  # threshold dominates every row


def test_bracket_contains_rational_proxy_quotients():
    """Cross-module validation: a rational point taken from deep inside the
    expansion's value bracket has its exhaustive-oracle quotient inside the
    continued-fraction bracket, for every small Q."""
    golden = convergents(generate_cf("golden", 60))
    proxy = RatVec.of(
        F(
            golden.p[-1] + golden.p[-2],
            golden.q[-1] + golden.q[-2],
        )
    )  # mediant of the last two convergents: strictly inside the bracket
    for params in (duality_params(F(0), F(3, 2)), duality_params(F(-1), F(5, 2))):
        e = params.exponents
        for Q in (2, 5, 16, 64, 256, 701):
            br = cf_quotient_bracket(golden, Q, e)
            oracle = dirichlet_quotient(proxy, Q, e).value
            assert br.lower.cmp(oracle) < 0 < br.upper.cmp(oracle)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=9), min_size=12, max_size=25),
    st.sampled_from([3, 10, 40, 150]),
    st.sampled_from([(F(0), F(3, 2)), (F(-1), F(5, 2)), (F(1, 2), F(7, 5))]),
)
def test_bracket_sound_on_random_prefixes(quotients, Q, aA):
    """For arbitrary prefixes, the bracket must contain the exhaustive-oracle
    quotient of a rational taken strictly inside the value bracket."""
    from dirichlet_lab.contfrac import ContinuedFraction, convergents

    cf = ContinuedFraction(0, tuple(quotients), exact=False)
    table = convergents(cf)
    if table.q[table.rows - 1] < 2 * Q:
        return  # too shallow for this Q; nothing to check
    proxy = RatVec.of(
        F(table.p[-1] + table.p[-2], table.q[-1] + table.q[-2])
    )
    e = duality_params(*aA).exponents
    br = cf_quotient_bracket(table, Q, e)
    oracle = dirichlet_quotient(proxy, Q, e).value
    assert br.lower.cmp(oracle) < 0 < br.upper.cmp(oracle)


def test_bracket_rejects_exact_tables():
    from dirichlet_lab.contfrac import convergents, expand_rational

    table = convergents(expand_rational(F(355, 113)))
    with pytest.raises(DomainError):
        cf_quotient_bracket(table, 10, duality_params(F(0), F(3, 2)).exponents)


def test_horizon_grid_includes_spikes():
    t = convergents(generate_cf_capped("power:2", 30, 60))
    grid = horizon_grid(t)
    for n in range(2, t.rows - 1):
        spike = t.q[n + 1] // 2
        if spike <= grid[-1]:
            assert spike in grid


def test_implications_golden_consistent():
    golden = convergents(generate_cf("golden", 200))
    params = duality_params(F(0), F(3, 2))
    brackets = grid_brackets(golden, params.exponents)
    for alpha in (F(1, 16), F(1), F(4)):
        ri = check_implication_i(golden, params, alpha, F(4), brackets)
        rii = check_implication_ii(golden, params, alpha, F(4), brackets)
        assert ri.verdict == "consistent"
        assert rii.verdict == "consistent"
        assert ri.lhs_status == "holds"  # golden is approximable here
        assert rii.vacuous


def test_implications_power2_spikes():
    power2 = convergents(generate_cf_capped("power:2", 30, 120))
    params = duality_params(F(0), F(3, 2))
    brackets = grid_brackets(power2, params.exponents)
    for alpha in (F(1, 64), F(4)):
        ri = check_implication_i(power2, params, alpha, F(4), brackets)
        rii = check_implication_ii(power2, params, alpha, F(4), brackets)
        assert ri.verdict == "consistent" and ri.vacuous  # not approximable
        assert rii.verdict == "consistent" and rii.rhs_rich


def test_implications_degenerate_horizon():
    tiny = convergents(generate_cf("golden", 4))
    params = duality_params(F(0), F(3, 2))
    rep = check_implication_i(tiny, params, F(1), F(1))
    assert rep.verdict == "undecided-at-horizon"


def test_minimizer_lemma_consistency():
    """The bracket's upper-bound witness at Q = q_(n+1) - 1 is itself subject
    to the best-approximation structure: a witness index exists for it."""
    golden = generate_cf("golden", 60)
    t = convergents(golden)
    e = duality_params(F(0), F(3, 2)).exponents
    for n in range(6, 12):
        Q = t.q[n + 1] - 1
        br = cf_quotient_bracket(t, Q, e)
        wit = check_best_approx_lemma(golden, br.witness_p, br.witness_q)
        assert 2 * br.witness_q > wit.qn
