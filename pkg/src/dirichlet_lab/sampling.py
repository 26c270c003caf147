"""Seeded rational test-point generation.

The only randomness in the package comes through here, always from an
explicit 64-bit seed, so every experiment is byte-reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DomainError
from .ratcore import RatVec


def random_rational_vec(rng: random.Random, d: int, den_cap: int) -> RatVec:
    """Uniform numerator over a uniform denominator in [2, den_cap], per
    coordinate; coordinates land in [0, 1)."""
    if den_cap < 2:
        raise DomainError("den_cap must be >= 2")
    coords = []
    for _ in range(d):
        den = rng.randrange(2, den_cap + 1)
        num = rng.randrange(0, den)
        coords.append(Fraction(num, den))
    return RatVec(tuple(coords))


def sample_points(seed: int, count: int, d: int, den_cap: int) -> list[RatVec]:
    rng = random.Random(seed)
    return [random_rational_vec(rng, d, den_cap) for _ in range(count)]


def fixed_denominator_vec(rng: random.Random, d: int, den: int) -> RatVec:
    """Nonzero numerators over one fixed denominator.

    With den prime and above the scan horizon no residue can vanish, which is
    the regime where the residue-chain product bound is meaningful."""
    if den < 2:
        raise DomainError("den must be >= 2")
    return RatVec(tuple(Fraction(rng.randrange(1, den), den) for _ in range(d)))


def sample_fixed_denominator(seed: int, count: int, d: int, den: int) -> list[RatVec]:
    rng = random.Random(seed)
    return [fixed_denominator_vec(rng, d, den) for _ in range(count)]
