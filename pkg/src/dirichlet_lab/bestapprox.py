"""Brute-force approximation oracle over denominators 1..Q.

Everything here scans every denominator q and takes the nearest integer
vector p, so verdicts are exhaustive ground truth rather than constructions.
The scan lives in an int64 kernel (numba or numpy, see `backend`); the argmin
decision is made exactly: a float log-space pre-filter keeps only denominators
within a generous margin of the running minimum, and exact integer-power
comparisons order those candidates.  Points whose common denominator is too
large for int64 fall back to a big-integer scan with the same semantics.

Minimization deliberately ranges over non-reduced p/q as well: for a < 0 a
larger-denominator representation of the same point strictly lowers
q^a * Q^A * dist, and scanning every q with its nearest p covers exactly that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import backend
from .errors import DomainError, InvariantViolation
from .ratcore import ExponentPair, RatVec, WeightedValue, nearest_rep

_LOG_MARGIN = 1e-6


@dataclass(frozen=True)
class ApproximationRecord:
    """Best integer vector p for one denominator q: dist = ||x - p/q||."""

    q: int
    p: tuple[int, ...]
    dist: Fraction


@dataclass(frozen=True)
class QuotientReport:
    """Exact minimizer of q^a * Q^A * ||x - p/q|| over 1 <= q <= Q."""

    Q: int
    exponents: ExponentPair
    minimizer: ApproximationRecord
    value: WeightedValue


@dataclass(frozen=True)
class ApproxVerdict:
    """Finite-horizon approximability verdict for thresholds D(x, Q) < kappa."""

    holds: bool
    fails_at: int | None
    worst_Q: int
    worst_value: WeightedValue
    kappa: Fraction
    Q0: int
    Qmax: int


class ResidueScan:
    """Residue norm numerators den * ||qx mod Z^d|| for q = 1..Q."""

    def __init__(self, x: RatVec, Q: int):
        if Q < 1:
            raise DomainError("Q must be >= 1")
        self.x = x
        self.Q = Q
        den = x.common_denominator()
        self.den = den
        nums = [(c.numerator * (den // c.denominator)) % den for c in x]
        if backend.int64_scan_ok(den, Q):
            arr = np.array(nums, dtype=np.int64)
            self.normnum = backend.residue_norm_scan(arr, den, Q)
        else:
            self.normnum = _residue_norm_scan_big(nums, den, Q)

    def norm_numerator(self, q: int) -> int:
        return int(self.normnum[q - 1])

    def dist(self, q: int) -> Fraction:
        return Fraction(self.norm_numerator(q), self.den * q)


def _residue_norm_scan_big(nums: list[int], den: int, Q: int) -> list[int]:
    out = []
    for q in range(1, Q + 1):
        best = 0
        for n in nums:
            t = (q * n) % den
            t = min(t, den - t)
            if t > best:
                best = t
        out.append(best)
    return out


def best_dist(x: RatVec, q: int) -> ApproximationRecord:
    """Nearest p/q to x for a single denominator, by direct folding."""
    rep, norm = nearest_rep(x, q)
    p = []
    for xi, ri in zip(x, rep):
        pi = q * xi - ri
        assert pi.denominator == 1
        p.append(pi.numerator)
    return ApproximationRecord(q=q, p=tuple(p), dist=norm / q)


def _cmp_candidates(q1: int, n1: int, q2: int, n2: int, e_exp: int, v: int) -> int:
    """Exact ordering of q^((a-1)v) * nn^v between two scan candidates."""
    if e_exp >= 0:
        lhs = q1**e_exp * n1**v
        rhs = q2**e_exp * n2**v
    else:
        lhs = n1**v * q2**-e_exp
        rhs = n2**v * q1**-e_exp
    return (lhs > rhs) - (lhs < rhs)


def _candidate_qs(scan: ResidueScan, a_float: float, lo: int, hi: int) -> list[int]:
    """Denominators in [lo, hi] that can still win the exact argmin.

    Log-space pre-filter: q survives iff its score is within _LOG_MARGIN of
    the running minimum over [lo..q].  Exact hits (residue 0) always survive.
    Double-precision scores are accurate to ~1e-13 relative here, so the
    1e-6 margin is far beyond any rounding slack; the kernel-equivalence
    tests cross-check this against fully exact scans.
    """
    if isinstance(scan.normnum, np.ndarray):
        nn = scan.normnum[lo - 1 : hi].astype(np.float64)
        q = np.arange(lo, hi + 1, dtype=np.float64)
        with np.errstate(divide="ignore"):
            g = (a_float - 1.0) * np.log(q) + np.log(nn)
        run = np.minimum.accumulate(g)
        keep = np.flatnonzero(g <= run + _LOG_MARGIN)
        return [int(i) + lo for i in keep]
    out = []
    best = math.inf
    for q_ in range(lo, hi + 1):
        n = scan.normnum[q_ - 1]
        g = -math.inf if n == 0 else (a_float - 1.0) * math.log(q_) + math.log(n)
        if g <= best + _LOG_MARGIN:
            out.append(q_)
        if g < best:
            best = g
    return out


def _min_in_range(
    scan: ResidueScan, e: ExponentPair, lo: int, hi: int
) -> tuple[int, int]:
    """Exact argmin of q^a * dist(q) over q in [lo, hi]; returns (q, normnum).

    Ties go to the smallest q.  The Q^A factor is constant over the range and
    cannot change the argmin.
    """
    if lo < 1 or hi > scan.Q or lo > hi:
        raise DomainError(f"bad scan range [{lo}, {hi}]")
    v = e.power_denom
    e_exp = int((e.a - 1) * v)
    best_q = best_nn = None
    for q in _candidate_qs(scan, float(e.a), lo, hi):
        nn = scan.norm_numerator(q)
        if nn == 0:
            return q, 0
        if best_q is None or _cmp_candidates(q, nn, best_q, best_nn, e_exp, v) < 0:
            best_q, best_nn = q, nn
    assert best_q is not None
    return best_q, best_nn


def _report_for(scan: ResidueScan, e: ExponentPair, Q: int, q: int) -> QuotientReport:
    rec = best_dist(scan.x, q)
    value = WeightedValue.from_parts(q, Q, rec.dist, e)
    return QuotientReport(Q=Q, exponents=e, minimizer=rec, value=value)


def dirichlet_quotient(x: RatVec, Q: int, e: ExponentPair) -> QuotientReport:
    """D(x, Q) = min over q <= Q and integer p of q^a * Q^A * ||x - p/q||."""
    scan = ResidueScan(x, Q)
    q, _ = _min_in_range(scan, e, 1, Q)
    return _report_for(scan, e, Q, q)


def quotient_grid(
    x: RatVec, Qs: Sequence[int], e: ExponentPair, scan: ResidueScan | None = None
) -> list[QuotientReport]:
    """D(x, Q) for every Q in Qs, sharing one residue scan.

    The prefix argmin of q^a * dist(q) is tracked exactly through the sorted
    grid, so the total cost is one scan to max(Qs) plus a handful of exact
    comparisons, not one full rescan per grid point.
    """
    if not Qs:
        return []
    order = sorted(range(len(Qs)), key=lambda i: Qs[i])
    Qmax = Qs[order[-1]]
    if scan is None or scan.Q < Qmax:
        scan = ResidueScan(x, Qmax)
    v = e.power_denom
    e_exp = int((e.a - 1) * v)
    cands = _candidate_qs(scan, float(e.a), 1, Qmax)
    out: list[QuotientReport | None] = [None] * len(Qs)
    best_q = best_nn = None
    ci = 0
    for idx in order:
        Q = Qs[idx]
        if Q < 1:
            raise DomainError("Q must be >= 1")
        while ci < len(cands) and cands[ci] <= Q:
            q = cands[ci]
            nn = scan.norm_numerator(q)
            if best_nn == 0:
                pass
            elif nn == 0:
                best_q, best_nn = q, 0
            elif best_q is None or _cmp_candidates(q, nn, best_q, best_nn, e_exp, v) < 0:
                best_q, best_nn = q, nn
            ci += 1
        assert best_q is not None
        out[idx] = _report_for(scan, e, Q, best_q)
    return out  # type: ignore[return-value]


def check_dirichlet(x: RatVec, Q: int) -> ApproximationRecord:
    """Smallest q in [1, Q] with ||x - p/q|| < q^(-1) * Q^(-1/d), strictly.

    Existence is the classical theorem; failure to find one is reported as an
    implementation bug, never as a mathematical outcome.
    """
    d = x.dim
    scan = ResidueScan(x, Q)
    den_pow = scan.den**d
    for q in range(1, Q + 1):
        nn = scan.norm_numerator(q)
        if nn**d * Q < den_pow:
            return best_dist(x, q)
    dump = [(q, scan.norm_numerator(q), scan.den) for q in range(1, Q + 1)]
    raise InvariantViolation(
        f"THEOREM VIOLATION: no strict witness for x={x.as_text()} Q={Q}; scan={dump}"
    )


def _segments(scan: ResidueScan, e: ExponentPair, Qmax: int):
    """Yield (L, R, q, nn): on Q in [L, R] the prefix argmin is (q, nn)."""
    v = e.power_denom
    e_exp = int((e.a - 1) * v)
    cands = _candidate_qs(scan, float(e.a), 1, Qmax)
    best_q = best_nn = None
    start = 1
    for q in cands:
        nn = scan.norm_numerator(q)
        if best_q is None:
            best_q, best_nn = q, nn
            start = q
            continue
        if best_nn == 0:
            break
        better = nn == 0 or _cmp_candidates(q, nn, best_q, best_nn, e_exp, v) < 0
        if better:
            if q - 1 >= start:
                yield start, q - 1, best_q, best_nn
            best_q, best_nn = q, nn
            start = q
    if best_q is not None:
        yield start, Qmax, best_q, best_nn


def is_approximable(
    x: RatVec, e: ExponentPair, kappa: Fraction, Q0: int, Qmax: int
) -> ApproxVerdict:
    """Check D(x, Q) < kappa strictly for every integer Q in [Q0, Qmax]."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    if not 1 <= Q0 <= Qmax:
        raise DomainError("need 1 <= Q0 <= Qmax")
    v = e.power_denom
    Av = int(e.A * v)
    kap_pow = kappa**v
    scan = ResidueScan(x, Qmax)

    fails_at: int | None = None
    worst_Q: int | None = None
    worst: WeightedValue | None = None

    def value_at(Q: int, w_pow: Fraction) -> WeightedValue:
        return WeightedValue(v, w_pow * Fraction(Q) ** Av)

    for L, R, q, nn in _segments(scan, e, Qmax):
        L, R = max(L, Q0), min(R, Qmax)
        if L > R:
            continue
        if nn == 0:
            if worst is None:
                worst, worst_Q = value_at(L, Fraction(0)), L
            continue
        w_pow = Fraction(q) ** int(e.a * v) * Fraction(nn, scan.den * q) ** v

        def violates(Q: int) -> bool:
            return Fraction(Q) ** Av * w_pow >= kap_pow

        if fails_at is None:
            if Av > 0:
                if violates(L):
                    fails_at = L
                elif violates(R):
                    lo, hi = L, R  # least violator by bisection
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if violates(mid):
                            hi = mid
                        else:
                            lo = mid + 1
                    fails_at = lo
            elif violates(L):
                fails_at = L
        for Qend in (L, R) if L != R else (L,):
            val = value_at(Qend, w_pow)
            if worst is None or val.cmp(worst) > 0:
                worst, worst_Q = val, Qend
    assert worst is not None and worst_Q is not None
    return ApproxVerdict(
        holds=fails_at is None,
        fails_at=fails_at,
        worst_Q=worst_Q,
        worst_value=worst,
        kappa=kappa,
        Q0=Q0,
        Qmax=Qmax,
    )


def sup_over_sample(
    points: Sequence[RatVec], e: ExponentPair, Q: int
) -> tuple[WeightedValue, RatVec, QuotientReport]:
    """Exact max of the Dirichlet quotient over a finite sample of points."""
    if not points:
        raise DomainError("empty sample")
    dims = {p.dim for p in points}
    if len(dims) != 1:
        raise DomainError("sample points must share a dimension")
    best_val: WeightedValue | None = None
    best_point = None
    best_report = None
    for pt in points:
        report = dirichlet_quotient(pt, Q, e)
        if best_val is None or report.value.cmp(best_val) > 0:
            best_val, best_point, best_report = report.value, pt, report
    assert best_val is not None
    return best_val, best_point, best_report
