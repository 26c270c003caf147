"""Exact rational substrate: vectors under the max norm, nearest mod-1
representatives, and exact comparison of power-weighted distances.

Rationals are `fractions.Fraction` throughout (always stored reduced, positive
denominator), so heights and equality tests are trivial.  Quantities of the
form q^a * Q^A * dist with rational exponents are irrational in general; they
are represented exactly by their v-th power (`WeightedValue`), where v clears
both exponent denominators.  No floating point sits on any decision path --
floats appear only as display values and as pre-filters that are re-checked
exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DomainError

BigRational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def reduce(num: int, den: int) -> Fraction:
    """Unique reduced representative of num/den with positive denominator."""
    if den == 0:
        raise DomainError("denominator must be nonzero")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse the strict 'p/q' text format (optional sign, no whitespace)."""
    if not _RATIONAL_RE.match(text):
        raise DomainError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        return reduce(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class RatVec:
    """Point of Q^d; immutable, fixed dimension."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise DomainError("RatVec needs dimension >= 1")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: Fraction | int | str) -> "RatVec":
        parsed = tuple(
            parse_rational(c) if isinstance(c, str) else Fraction(c) for c in coords
        )
        return cls(parsed)

    @classmethod
    def from_text(cls, text: str) -> "RatVec":
        return cls(tuple(parse_rational(part) for part in text.split(",")))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def as_text(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def common_denominator(self) -> int:
        return math.lcm(*(c.denominator for c in self.coords))


def dist_max(x: RatVec, y: RatVec) -> Fraction:
    """Exact max-norm distance between two points of the same dimension."""
    if x.dim != y.dim:
        raise DomainError(f"dimension mismatch: {x.dim} vs {y.dim}")
    return max(abs(a - b) for a, b in zip(x, y))


def norm_max(x: RatVec) -> Fraction:
    return max(abs(c) for c in x)


def fold_half_open(value: Fraction) -> Fraction:
    """Reduce mod 1 into (-1/2, 1/2]; the tie at 1/2 folds to +1/2."""
    n, d = value.numerator, value.denominator
    t = n % d
    if 2 * t > d:
        t -= d
    return Fraction(t, d)


def nearest_rep(x: RatVec, q: int) -> tuple[RatVec, Fraction]:
    """Representative of q*x + Z^d of minimal max norm.

    Every coordinate lands in (-1/2, 1/2]; a coordinate at distance exactly
    1/2 from Z is folded to +1/2, which keeps chains built on top of this
    deterministic.
    """
    if q < 1:
        raise DomainError("q must be >= 1")
    rep = RatVec(tuple(fold_half_open(q * c) for c in x))
    return rep, norm_max(rep)


@dataclass(frozen=True)
class ExponentPair:
    """Exact exponent pair (a, A) of the weight q^(-a) * Q^(-A)."""

    a: Fraction
    A: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "A", Fraction(self.A))

    @classmethod
    def of(cls, a, A) -> "ExponentPair":
        a = parse_rational(a) if isinstance(a, str) else Fraction(a)
        A = parse_rational(A) if isinstance(A, str) else Fraction(A)
        return cls(a, A)

    @property
    def power_denom(self) -> int:
        """Least v such that v*a and v*A are integers."""
        return math.lcm(self.a.denominator, self.A.denominator)


def iroot_floor(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n (exact integer k-th root)."""
    if n < 0 or k < 1:
        raise DomainError("iroot_floor needs n >= 0, k >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def ceil_pow(Q: int, exponent: Fraction) -> int:
    """Exact ceiling of Q**exponent for Q >= 1 and exponent >= 0.

    Computed by integer root extraction of Q**u (u/v = exponent), so values
    sitting exactly on a perfect power are never mis-rounded.
    """
    if Q < 1 or exponent < 0:
        raise DomainError("ceil_pow needs Q >= 1, exponent >= 0")
    u, v = exponent.numerator, exponent.denominator
    power = Q**u
    r = iroot_floor(power, v)
    return r if r**v == power else r + 1


def _float_of_ratio(num: int, den: int) -> float:
    """float(num/den) that survives operands far beyond float range."""
    try:
        return num / den
    except OverflowError:
        shift = max(num.bit_length(), den.bit_length()) - 500
        return (num >> shift) / (den >> shift)


@dataclass(frozen=True)
class WeightedValue:
    """Exact handle on w = q^a * Q^A * dist, stored as (v, w**v).

    Two handles with compatible v compare exactly; v is aligned by lcm when
    mixed exponent pairs meet.  Decimal output is computed by integer root
    extraction, never by float powering.
    """

    v: int
    pow: Fraction

    @classmethod
    def from_parts(
        cls,
        qbase: Fraction | int,
        Q: int,
        dist: Fraction,
        e: ExponentPair,
        v: int | None = None,
    ) -> "WeightedValue":
        if dist < 0:
            raise DomainError("dist must be >= 0")
        v = e.power_denom if v is None else v
        if v % e.power_denom:
            raise DomainError("v must clear both exponent denominators")
        qbase = Fraction(qbase)
        if qbase <= 0 or Q < 1:
            raise DomainError("bases must be positive")
        p = qbase ** int(e.a * v) * Fraction(Q) ** int(e.A * v) * dist**v
        return cls(v, p)

    @classmethod
    def from_rational(cls, value: Fraction, v: int = 1) -> "WeightedValue":
        if value < 0:
            raise DomainError("WeightedValue is nonnegative")
        return cls(v, Fraction(value) ** v)

    def _aligned(self, other: "WeightedValue") -> tuple[Fraction, Fraction]:
        v = math.lcm(self.v, other.v)
        return self.pow ** (v // self.v), other.pow ** (v // other.v)

    def cmp(self, other: "WeightedValue") -> int:
        a, b = self._aligned(other)
        return (a > b) - (a < b)

    def cmp_rational(self, t: Fraction) -> int:
        if t < 0:
            return 1
        rhs = Fraction(t) ** self.v
        return (self.pow > rhs) - (self.pow < rhs)

    def __lt__(self, other: "WeightedValue") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "WeightedValue") -> bool:
        return self.cmp(other) <= 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedValue):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self) -> int:
        return hash((self.v, self.pow))

    def is_zero(self) -> bool:
        return self.pow == 0

    def scale_by_rational(self, s: Fraction) -> "WeightedValue":
        if s < 0:
            raise DomainError("scale must be >= 0")
        return WeightedValue(self.v, self.pow * Fraction(s) ** self.v)

    def scale_by_power(self, base: int, exponent: Fraction) -> "WeightedValue":
        """Multiply by base**exponent (base >= 1), aligning v as needed."""
        if base < 1:
            raise DomainError("base must be >= 1")
        v = math.lcm(self.v, exponent.denominator)
        p = self.pow ** (v // self.v) * Fraction(base) ** int(exponent * v)
        return WeightedValue(v, p)

    def to_float(self) -> float:
        if self.pow == 0:
            return 0.0
        num, den = self.pow.numerator, self.pow.denominator
        log = (_log_big(num) - _log_big(den)) / self.v
        if log > 700:
            return math.inf
        if log < -700:
            return 0.0
        return math.exp(log)

    def to_decimal(self, digits: int = 12) -> str:
        """Exact truncation of the value to the given number of digits."""
        num, den = self.pow.numerator, self.pow.denominator
        scaled = num * 10 ** (digits * self.v) // den
        r = iroot_floor(scaled, self.v)
        s = str(r).rjust(digits + 1, "0")
        return f"{s[:-digits]}.{s[-digits:]}"

    def exact_text(self) -> str:
        """Machine-readable exact form: 'N/M' when v = 1, else '(N/M)^(1/v)'."""
        if self.v == 1:
            return str(self.pow)
        return f"({self.pow})^(1/{self.v})"


def _log_big(n: int) -> float:
    """Natural log of a positive int, safe for values beyond float range."""
    if n <= 0:
        raise DomainError("log of nonpositive")
    bits = n.bit_length()
    if bits <= 512:
        return math.log(n)
    top = n >> (bits - 512)
    return math.log(top) + (bits - 512) * math.log(2)


def cmp_weighted(
    q: int,
    Q: int,
    dist: Fraction,
    e: ExponentPair,
    threshold: Fraction,
) -> int:
    """Exact ordering of q^a * Q^A * dist against a positive threshold.

    Returns -1, 0, or 1.  Rational exponents are cleared to the common
    denominator and compared as integer powers.
    """
    if dist < 0:
        raise DomainError("dist must be >= 0")
    if q < 1 or Q < 1:
        raise DomainError("q, Q must be >= 1")
    if threshold <= 0:
        raise DomainError("threshold must be positive")
    return WeightedValue.from_parts(q, Q, dist, e).cmp_rational(threshold)
