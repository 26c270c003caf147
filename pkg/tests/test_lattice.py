from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirichlet_lab.errors import DomainError
from dirichlet_lab.lattice import (
    _DirichletDomain,
    greedy_construct,
    residue_table,
    verify_claim,
)
from dirichlet_lab.ratcore import RatVec
from dirichlet_lab.sampling import sample_fixed_denominator


def test_residue_table_examples():
    rows = residue_table(RatVec.of(F(2, 7)), 3)
    assert [(q, r.coords[0], n) for q, r, n in rows] == [
        (1, F(2, 7), F(2, 7)),
        (2, F(-3, 7), F(3, 7)),
        (3, F(-1, 7), F(1, 7)),
    ]
    rows = residue_table(RatVec.of(F(0), F(0)), 2)
    assert all(n == 0 for _, _, n in rows)
    rows = residue_table(RatVec.of(F(1, 2)), 2)
    assert [(q, n) for q, _, n in rows] == [(1, F(1, 2)), (2, F(0))]
    with pytest.raises(DomainError):
        residue_table(RatVec.of(F(1, 2)), 0)


def test_greedy_examples():
    chain = greedy_construct(RatVec.of(F(2, 7)), 3)
    assert chain.k == 1
    assert chain.steps[0].q == 3 and chain.steps[0].norm == F(1, 7)

    chain = greedy_construct(RatVec.of(F(1, 2)), 2)
    assert chain.k == 1
    assert chain.steps[0].q == 1 and chain.steps[0].norm == F(1, 2)

    chain = greedy_construct(RatVec.of(F(0)), 5)
    assert chain.k == 0


def test_verify_claim_examples():
    rep = verify_claim(greedy_construct(RatVec.of(F(2, 7)), 3))
    assert rep.product == F(1, 7) and rep.ratio == F(3, 7)
    assert rep.independent and rep.decay_ok and not rep.degenerate

    rep = verify_claim(greedy_construct(RatVec.of(F(0)), 5))
    assert rep.product == 1 and rep.ratio == 5 and rep.degenerate


def test_chain_on_fixed_prime_denominator():
    x = RatVec.of(F(123, 10007), F(4567, 10007))
    chain = greedy_construct(x, 100)
    rep = verify_claim(chain)
    assert chain.k <= 2 and rep.independent and rep.decay_ok
    for step in chain.steps:
        assert step.norm <= F(1, 2)
        assert step.perp_dist_sq <= step.norm2_sq


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=10**6))
def test_chain_invariants_random(d, seed):
    x = sample_fixed_denominator(seed, 1, d, 1009)[0]
    chain = greedy_construct(x, 60)
    rep = verify_claim(chain)
    assert chain.k <= d
    assert rep.independent and rep.decay_ok
    for j, step in enumerate(chain.steps):
        assert step.norm <= F(1, 2)
        assert F(3, 4) ** j * step.norm2_sq <= step.perp_dist_sq <= step.norm2_sq


def test_greedy_minimality_of_first_step():
    """Step 0 must pick the smallest nonzero residue norm (Euclidean), with
    ties going to the smallest q."""
    for seed in range(5):
        x = sample_fixed_denominator(seed, 1, 2, 499)[0]
        chain = greedy_construct(x, 40)
        norms = [
            (sum(c * c for c in r.coords), q)
            for q, r, n in residue_table(x, 40)
            if n > 0
        ]
        best = min(norms)
        got = chain.steps[0]
        assert (sum(c * c for c in got.residue.coords), got.q) == best


def _brute_force_in_domain(basis, z, box=9):
    """Independent check over a coefficient box (adequate for short bases)."""
    zf = [F(c) for c in z]
    zsq = sum(c * c for c in zf)
    k = len(basis)
    for coeffs in product(range(-box, box + 1), repeat=k):
        if not any(coeffs):
            continue
        lam = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(len(z))]
        diff_sq = sum((a - b) ** 2 for a, b in zip(zf, lam))
        if diff_sq <= zsq:
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_domain_membership_matches_brute_force(data):
    ints = st.integers(min_value=-4, max_value=4)
    b0 = data.draw(st.tuples(ints, ints))
    b1 = data.draw(st.tuples(ints, ints))
    det = b0[0] * b1[1] - b0[1] * b1[0]
    if det == 0:
        basis = [b0] if any(b0) else []
    else:
        basis = [b0, b1]
    z = data.draw(st.tuples(ints, ints))
    if not basis:
        return
    domain = _DirichletDomain(basis)
    # box 9 is exhaustive here: any violator satisfies |lambda| <= 2|z| <= 12
    # and the basis vectors have length >= 1
    assert domain.contains(z) == _brute_force_in_domain(basis, z, box=14)
