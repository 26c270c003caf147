"""The critical exponent boundary and the explicit hard-to-approximate points
sitting on it.

For a in [0, 1] the boundary value A makes the exponent ladder
alpha_j = A * (1 + a + ... + a^(j-1)) run exactly from 0 to 1; the witness
point x = (1/Q_1, ..., 1/Q_d) is built from ceilings of exact rational powers
of Q along that ladder.  Verification measures the weighted quotient with the
brute-force oracle and checks it band by band against the analytic floor
(Q_(i-1)/2)^a * Q^A / Q_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bestapprox import ResidueScan, _min_in_range, best_dist
from .errors import DomainError, InvariantViolation
from .ratcore import ExponentPair, RatVec, WeightedValue, ceil_pow


@dataclass(frozen=True)
class BoundaryValue:
    d: int
    a: Fraction
    value: Fraction
    segment: str  # left | core | slope | zero


def boundary_value(d: int, a: Fraction) -> BoundaryValue:
    """Piecewise-exact critical boundary in the (a, A) exponent plane.

    Segments: 1 + |a| for a <= 0; 1 / (1 + a + ... + a^(d-1)) on [0, 1];
    1 + 1/d - a on [1, 1 + 1/d]; 0 beyond.  The formulas agree at the joints.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    a = Fraction(a)
    if a < 0:
        return BoundaryValue(d, a, 1 - a, "left")
    if a <= 1:
        geom = sum(a**i for i in range(d))
        return BoundaryValue(d, a, Fraction(1) / geom, "core")
    if a <= 1 + Fraction(1, d):
        return BoundaryValue(d, a, 1 + Fraction(1, d) - a, "slope")
    return BoundaryValue(d, a, Fraction(0), "zero")


def exponent_ladder(d: int, a: Fraction) -> tuple[Fraction, ...]:
    """alpha_0..alpha_d with alpha_0 = 0, alpha_d = 1 exactly.

    alpha_j = A * sum(a^i, i < j) where A is the boundary value; equivalently
    alpha_j = A + a * alpha_(j-1).  Nondecreasing, and strictly increasing
    whenever a > 0 (at a = 0 every step after the first is flat).
    """
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise DomainError("ladder is defined for a in [0, 1]")
    A = boundary_value(d, a).value
    alphas = [Fraction(0)]
    for _ in range(d):
        alphas.append(A + a * alphas[-1])
    assert alphas[-1] == 1
    return tuple(alphas)


@dataclass(frozen=True)
class WitnessPoint:
    d: int
    a: Fraction
    Q: int
    alphas: tuple[Fraction, ...]
    n: tuple[int, ...]
    Qseq: tuple[int, ...]
    x: RatVec

    @property
    def exponents(self) -> ExponentPair:
        return ExponentPair(self.a, boundary_value(self.d, self.a).value)


def build_witness(d: int, a: Fraction, Q: int) -> WitnessPoint:
    """x = (1/Q_1, ..., 1/Q_d) with Q_j = 2 * n_1 * ... * n_j and
    n_i = ceil(Q ** (alpha_i - alpha_(i-1))), all ceilings exact."""
    if Q < 2:
        raise DomainError("Q must be >= 2")
    alphas = exponent_ladder(d, a)
    n = tuple(ceil_pow(Q, alphas[i] - alphas[i - 1]) for i in range(1, d + 1))
    Qseq = [2]
    for ni in n:
        Qseq.append(Qseq[-1] * ni)
    x = RatVec(tuple(Fraction(1, Qj) for Qj in Qseq[1:]))
    return WitnessPoint(d=d, a=Fraction(a), Q=Q, alphas=alphas, n=n, Qseq=tuple(Qseq), x=x)


@dataclass(frozen=True)
class BandCheck:
    index: int
    q_lo: int
    q_hi: int
    floor: WeightedValue
    measured: WeightedValue | None  # None for an empty band
    ok: bool


@dataclass(frozen=True)
class WitnessVerification:
    witness: WitnessPoint
    exponents: ExponentPair
    epsilon: WeightedValue
    minimizer_q: int
    bands: tuple[BandCheck, ...]


def verify_witness_bound(w: WitnessPoint) -> WitnessVerification:
    """Measure epsilon = D(x, Q) exactly and check every denominator band.

    Band i holds the q with Q_(i-1) <= 2q < Q_i (the last band is widened to
    2q <= Q_d, which the construction guarantees); on it the weighted
    quotient is at least (Q_(i-1)/2)^a * Q^A / Q_i.  An oracle minimum below
    that floor is an implementation bug and raises InvariantViolation.
    """
    e = w.exponents
    scan = ResidueScan(w.x, w.Q)
    q_best, _ = _min_in_range(scan, e, 1, w.Q)
    eps = WeightedValue.from_parts(q_best, w.Q, best_dist(w.x, q_best).dist, e)

    bands = []
    for i in range(1, w.d + 1):
        lo = max(1, (w.Qseq[i - 1] + 1) // 2)
        hi = (w.Qseq[i] - 1) // 2
        if i == w.d:
            hi = max(hi, w.Q)
        hi = min(hi, w.Q)
        floor = WeightedValue.from_parts(
            Fraction(w.Qseq[i - 1], 2), w.Q, Fraction(1, w.Qseq[i]), e
        )
        if lo > hi:
            bands.append(BandCheck(i, lo, hi, floor, None, True))
            continue
        bq, _ = _min_in_range(scan, e, lo, hi)
        measured = WeightedValue.from_parts(bq, w.Q, best_dist(w.x, bq).dist, e)
        ok = measured.cmp(floor) >= 0
        bands.append(BandCheck(i, lo, hi, floor, measured, ok))
        if not ok:
            raise InvariantViolation(
                f"PROOF VIOLATION: band {i} of witness (d={w.d}, a={w.a}, Q={w.Q}) "
                f"has oracle minimum below the analytic floor at q={bq}"
            )
    return WitnessVerification(
        witness=w, exponents=e, epsilon=eps, minimizer_q=q_best, bands=tuple(bands)
    )
