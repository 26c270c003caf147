"""Minimal Diophantine-space abstraction: the standard rational space with
height = reduced common denominator, rational affine automorphisms carrying
exact bi-Lipschitz and height-distortion constants, and the transport check
that moves non-approximability through an automorphism.

The category-theoretic conclusion itself is out of computational reach; what
this module produces are its finite ingredients: complete height-bounded
enumerations inside balls (openness is locally a finite condition), cube
automorphisms into arbitrary balls (density), and the exact inequality chase
showing that a point failing the inflated threshold maps to a point failing
the plain one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bestapprox import quotient_grid
from .errors import DomainError, InvariantViolation
from .ratcore import ExponentPair, RatVec, WeightedValue, dist_max


def height(r: RatVec) -> int:
    """Reduced common denominator (1 for integer vectors)."""
    return r.common_denominator()


@dataclass(frozen=True)
class DiophantineSpace:
    """The standard space: R^d with its rational points and height above."""

    d: int

    def dist(self, x: RatVec, y: RatVec) -> Fraction:
        return dist_max(x, y)

    def rationals_in_ball(
        self, center: RatVec, radius: Fraction, Q: int
    ) -> list[RatVec]:
        """Every rational vector of height <= Q in the closed max-norm ball.

        Enumerates each common denominator h = 1..Q and the integer boxes it
        admits; duplicates reduce to the same vector and are deduped, so the
        result is exactly the height-filtered ball, sorted by (height,
        coordinates) for reproducibility.
        """
        if center.dim != self.d:
            raise DomainError("center dimension mismatch")
        radius = Fraction(radius)
        if radius < 0:
            raise DomainError("radius must be >= 0")
        seen = set()
        out = []
        for h in range(1, Q + 1):
            ranges = []
            for c in center:
                lo = math.ceil((c - radius) * h)
                hi = math.floor((c + radius) * h)
                ranges.append(range(lo, hi + 1))
            for nums in product(*ranges):
                vec = RatVec(tuple(Fraction(n, h) for n in nums))
                if vec.coords not in seen:
                    seen.add(vec.coords)
                    out.append(vec)
        out.sort(key=lambda v: (height(v), v.coords))
        return out


def std_space(d: int) -> DiophantineSpace:
    if d < 1:
        raise DomainError("d must be >= 1")
    return DiophantineSpace(d)


@dataclass(frozen=True)
class AffineAutomorphism:
    """x -> s*x + shift with rational s != 0 and rational shift.

    lipschitz holds the exact pair (|s|, 1/|s|); height_distortion C2 =
    |num(s) * den(s)| * lcm of shift denominators bounds H(phi(r))/H(r) in
    both directions, exactly.
    """

    scale: Fraction
    shift: RatVec

    @property
    def d(self) -> int:
        return self.shift.dim

    @property
    def lipschitz(self) -> tuple[Fraction, Fraction]:
        return abs(self.scale), 1 / abs(self.scale)

    @property
    def bi_lipschitz_constant(self) -> Fraction:
        return max(self.lipschitz)

    @property
    def height_distortion(self) -> int:
        s = self.scale
        shift_l = math.lcm(*(c.denominator for c in self.shift))
        return abs(s.numerator * s.denominator) * shift_l

    def apply(self, x: RatVec) -> RatVec:
        return RatVec(tuple(self.scale * c + t for c, t in zip(x, self.shift)))

    def inverse(self) -> "AffineAutomorphism":
        inv_scale = 1 / self.scale
        inv_shift = RatVec(tuple(-t / self.scale for t in self.shift))
        return AffineAutomorphism(inv_scale, inv_shift)

    def compose(self, other: "AffineAutomorphism") -> "AffineAutomorphism":
        """self after other: x -> self(other(x))."""
        if self.d != other.d:
            raise DomainError("dimension mismatch")
        scale = self.scale * other.scale
        shift = RatVec(
            tuple(self.scale * t + u for t, u in zip(other.shift, self.shift))
        )
        return AffineAutomorphism(scale, shift)


def make_affine(s: Fraction, shift: RatVec) -> AffineAutomorphism:
    s = Fraction(s)
    if s == 0:
        raise DomainError("scale must be nonzero")
    return AffineAutomorphism(s, shift)


def map_cube_into_ball(d: int, center: RatVec, radius: Fraction) -> AffineAutomorphism:
    """Automorphism sending the unit cube into the given max-norm ball.

    Scale 1/ceil(2/radius) shrinks the cube to at most half the radius; the
    image is centered on the ball's center.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise DomainError("radius must be positive")
    if center.dim != d:
        raise DomainError("center dimension mismatch")
    m = -((-2 * radius.denominator) // radius.numerator)  # ceil(2/radius)
    s = Fraction(1, m)
    shift = RatVec(tuple(c - s / 2 for c in center))
    return make_affine(s, shift)


@dataclass(frozen=True)
class TransportRow:
    Q_target: int  # horizon on the image side
    Q_source: int  # C2 * Q_target on the source side
    source_fails: bool
    target_fails: bool


@dataclass(frozen=True)
class TransportReport:
    phi: AffineAutomorphism
    exponents: ExponentPair
    kappa: Fraction
    inflated_kappa_pow: WeightedValue  # C1 * C2^(|a|+|A|) * kappa, as a power handle
    rows: tuple[TransportRow, ...]
    checked: int  # rows where the source threshold failed
    verdict: str


def transport_check(
    x: RatVec,
    phi: AffineAutomorphism,
    e: ExponentPair,
    kappa: Fraction,
    Q0: int,
    horizon: int,
) -> TransportReport:
    """Exact finite-horizon inequality chase through an automorphism.

    For every Q in [Q0, horizon]: if x fails the inflated threshold
    C1 * C2^(|a|+|A|) * kappa at C2 * Q, then phi(x) must fail kappa at Q.
    A counterexample is an implementation bug (the chase is an identity-level
    computation) and raises InvariantViolation.
    """
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise DomainError("kappa must be positive")
    if not 1 <= Q0 <= horizon:
        raise DomainError("need 1 <= Q0 <= horizon")
    C1 = phi.bi_lipschitz_constant
    C2 = phi.height_distortion
    v = e.power_denom
    inflated = WeightedValue.from_rational(C1 * kappa, v).scale_by_power(
        C2, abs(e.a) + abs(e.A)
    )
    y = phi.apply(x)
    targets = list(range(Q0, horizon + 1))
    sources = [C2 * Q for Q in targets]
    reports_x = quotient_grid(x, sources, e)
    reports_y = quotient_grid(y, targets, e)
    rows = []
    checked = 0
    for Qt, Qs, rx, ry in zip(targets, sources, reports_x, reports_y):
        source_fails = rx.value.cmp(inflated) >= 0
        target_fails = ry.value.cmp_rational(kappa) >= 0
        rows.append(TransportRow(Qt, Qs, source_fails, target_fails))
        if source_fails:
            checked += 1
            if not target_fails:
                raise InvariantViolation(
                    f"PROOF VIOLATION: transport chase broke at Q={Qt} "
                    f"(source Q={Qs}) for phi=({phi.scale}, {phi.shift.as_text()})"
                )
    return TransportReport(
        phi=phi,
        exponents=e,
        kappa=kappa,
        inflated_kappa_pow=inflated,
        rows=tuple(rows),
        checked=checked,
        verdict="consistent",
    )
