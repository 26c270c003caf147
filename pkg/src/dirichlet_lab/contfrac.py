"""Continued fractions for the one-dimensional theory: convergent tables,
intermediate fractions, the best-approximation witness search, and growth
tests on denominator sequences.

Irrational inputs are represented by finite prefixes of their expansion.  Any
comparison |x - p/q| against a threshold is replaced by exact two-sided
bounds read off the deepest available convergents (the true value lies
strictly between consecutive convergents, whatever the continuation), and an
operation only reports a verdict once the bracket decides it; otherwise it
raises HorizonError rather than guessing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import DomainError, HorizonError, InvariantViolation

_CF_RE = re.compile(r"^\[(-?\d+)(?:;(\d+(?:,\d+)*))?\]$")


@dataclass(frozen=True)
class ContinuedFraction:
    """Integer part plus a finite run of partial quotients.

    exact=True means the quotients are the complete canonical expansion of a
    rational (last quotient >= 2 unless there are none).  exact=False marks a
    prefix of a longer expansion; `rule` optionally names the generator that
    can extend it on demand ("golden", "constant:k", "power:m").
    """

    a0: int
    quotients: tuple[int, ...]
    exact: bool
    rule: str | None = None

    def __post_init__(self) -> None:
        if any(w < 1 for w in self.quotients):
            raise DomainError("partial quotients must be >= 1")
        if self.exact and self.quotients and self.quotients[-1] < 2:
            raise DomainError("canonical rational expansion needs last quotient >= 2")

    @property
    def length(self) -> int:
        return len(self.quotients)

    def value(self) -> Fraction:
        if not self.exact:
            raise DomainError("only an exact expansion has a rational value")
        return convergents(self).convergent(self.length)

    def as_text(self) -> str:
        if not self.quotients:
            return f"[{self.a0}]"
        return f"[{self.a0};{','.join(str(w) for w in self.quotients)}]"


def parse_cf(text: str) -> ContinuedFraction:
    """Parse '[a0;w1,w2,...]'.

    A canonical quotient list (empty, or last quotient >= 2) is taken as the
    complete expansion of a rational; anything else is kept as a prefix.
    """
    m = _CF_RE.match(text)
    if not m:
        raise DomainError(f"not a continued fraction literal: {text!r}")
    a0 = int(m.group(1))
    quotients = tuple(int(w) for w in m.group(2).split(",")) if m.group(2) else ()
    exact = not quotients or quotients[-1] >= 2
    return ContinuedFraction(a0=a0, quotients=quotients, exact=exact)


def expand_rational(x: Fraction) -> ContinuedFraction:
    """Canonical finite expansion of a rational (plain Euclidean algorithm)."""
    x = Fraction(x)
    a0 = x.numerator // x.denominator
    num, den = x.numerator - a0 * x.denominator, x.denominator
    quotients = []
    while num:
        w, r = divmod(den, num)
        quotients.append(w)
        den, num = num, r
    return ContinuedFraction(a0=a0, quotients=tuple(quotients), exact=True)


@dataclass(frozen=True)
class ConvergentTable:
    """Rows (n, w_n, p_n, q_n), n = 0..rows-1, with c_0 = a0/1.

    Recurrence p_n = w_n p_(n-1) + p_(n-2) with seeds p_(-1) = 1, q_(-1) = 0.
    """

    a0: int
    quotients: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]
    exact: bool

    @property
    def rows(self) -> int:
        return len(self.p)

    def convergent(self, n: int) -> Fraction:
        return Fraction(self.p[n], self.q[n])

    def row(self, n: int) -> tuple[int, int | None, int, int]:
        w = self.quotients[n - 1] if n >= 1 else None
        return (n, w, self.p[n], self.q[n])

    def seeds_before(self, n: int) -> tuple[int, int]:
        """(p_(n-1), q_(n-1)) including the virtual row n = -1."""
        if n == 0:
            return 1, 0
        return self.p[n - 1], self.q[n - 1]


@lru_cache(maxsize=256)
def _full_table(cf: ContinuedFraction) -> ConvergentTable:
    p, q = [], []
    pm1, qm1 = 1, 0
    pn, qn = cf.a0, 1
    p.append(pn)
    q.append(qn)
    for w in cf.quotients:
        pn, pm1 = w * pn + pm1, pn
        qn, qm1 = w * qn + qm1, qn
        p.append(pn)
        q.append(qn)
    return ConvergentTable(
        a0=cf.a0, quotients=cf.quotients, p=tuple(p), q=tuple(q), exact=cf.exact
    )


def convergents(cf: ContinuedFraction, rows: int | None = None) -> ConvergentTable:
    """Table of the first `rows` convergents (rows=None: all available).

    rows = k needs k-1 partial quotients; a prefix with a generator rule is
    extended on demand, anything else past the stored prefix is a horizon
    error.
    """
    avail = cf.length + 1
    if rows is None:
        rows = avail
    if rows < 0:
        raise DomainError("rows must be >= 0")
    if rows > avail:
        if cf.rule is None:
            raise HorizonError(
                f"table needs {rows - 1} quotients, only {cf.length} stored"
            )
        cf = generate_cf(cf.rule, rows - 1)
    full = _full_table(cf)
    if rows == full.rows:
        return full
    return ConvergentTable(
        a0=full.a0,
        quotients=full.quotients[: max(rows - 1, 0)],
        p=full.p[:rows],
        q=full.q[:rows],
        exact=full.exact and rows == full.rows,
    )


def intermediate_fractions(
    table: ConvergentTable, n: int
) -> list[tuple[int, int, int]]:
    """All (r, p, q) with p/q = (r p_n + p_(n-1)) / (r q_n + q_(n-1)),
    1 <= r <= w_(n+1); the last entry equals the next convergent."""
    if not 0 <= n <= table.rows - 2:
        raise DomainError(f"row {n} has no successor in a {table.rows}-row table")
    w = table.quotients[n]
    pn, qn = table.p[n], table.q[n]
    pm, qm = table.seeds_before(n)
    return [(r, r * pn + pm, r * qn + qm) for r in range(1, w + 1)]


# --- exact distance bracketing -------------------------------------------


@dataclass(frozen=True)
class DistBracket:
    """Bounds on |x - p/q|.  strict=True: lo < dist < hi (prefix case);
    strict=False: dist == lo == hi exactly (rational case)."""

    lo: Fraction
    hi: Fraction
    strict: bool

    def definitely_greater(self, t: Fraction) -> bool:
        """Certifies dist > t strictly."""
        return self.lo >= t if self.strict else self.lo > t

    def definitely_at_most(self, t: Fraction) -> bool:
        """Certifies dist <= t (so "dist > t" is certainly false)."""
        return self.hi <= t


def value_bracket(table: ConvergentTable) -> tuple[Fraction, Fraction, bool]:
    """(lo, hi, strict): the represented value lies in [lo, hi] (strict:
    open interval, every infinite continuation of the prefix included)."""
    if table.exact:
        v = table.convergent(table.rows - 1)
        return v, v, False
    if table.rows >= 2:
        u, w = table.convergent(table.rows - 2), table.convergent(table.rows - 1)
        return (u, w, True) if u < w else (w, u, True)
    if table.rows == 1:
        return Fraction(table.a0), Fraction(table.a0 + 1), True
    raise HorizonError("empty table has no value bracket")


def dist_bracket(table: ConvergentTable, p: int, q: int) -> DistBracket:
    if q < 1:
        raise DomainError("q must be >= 1")
    lo, hi, strict = value_bracket(table)
    t = Fraction(p, q)
    if not strict:
        d = abs(lo - t)
        return DistBracket(d, d, False)
    if t <= lo:
        return DistBracket(lo - t, hi - t, True)
    if t >= hi:
        return DistBracket(t - hi, t - lo, True)
    raise HorizonError(
        f"{p}/{q} falls inside the value bracket; extend the expansion"
    )


# --- best-approximation witness (exhaustively testable form) ---------------


@dataclass(frozen=True)
class LemmaWitness:
    n: int
    threshold: Fraction
    qn: int
    qn1: int


def check_best_approx_lemma(
    cf: ContinuedFraction, p: int, q: int, max_pairs: int | None = None
) -> LemmaWitness:
    """Least n with |x - p/q| > 1/(2 q_n q_(n+1)) and 2q > q_n, both strict.

    The distance is never evaluated in floating point: each n is settled by
    the bracket, and an undecidable bracket raises HorizonError.  A certified
    all-false sweep would disprove a theorem, so it raises
    InvariantViolation (bug signal).
    """
    table = convergents(cf)
    if table.exact and Fraction(p, q) == table.convergent(table.rows - 1):
        raise DomainError("p/q equals the expanded value; no witness exists")
    db = dist_bracket(table, p, q)
    pairs = table.rows - 1 if max_pairs is None else min(max_pairs, table.rows - 1)
    exhausted_by_q = False
    for n in range(pairs):
        if 2 * q <= table.q[n]:
            exhausted_by_q = True
            break
        threshold = Fraction(1, 2 * table.q[n] * table.q[n + 1])
        if db.definitely_greater(threshold):
            return LemmaWitness(
                n=n, threshold=threshold, qn=table.q[n], qn1=table.q[n + 1]
            )
        if not db.definitely_at_most(threshold):
            raise HorizonError(
                f"bracket for |x - {p}/{q}| cannot settle row {n}; deepen expansion"
            )
    if exhausted_by_q:
        raise InvariantViolation(
            f"no witness for p/q={p}/{q} though every admissible row was certified"
        )
    raise HorizonError(f"table exhausted before q_n reached 2q = {2 * q}")


# --- growth of denominators -------------------------------------------------


def final_third_cut(pair_count: int) -> int:
    """First index of the declared 'final third' of rows 0..pair_count-1."""
    if pair_count <= 0:
        return 0
    return (2 * (pair_count - 1)) // 3


def growth_row_satisfied(
    qn: int,
    qn1: int,
    c: Fraction,
    coeff: Fraction,
    base: Fraction = Fraction(1),
    exp: Fraction = Fraction(0),
) -> bool:
    """Exact test of q_(n+1) >= q_n^(c-1) / K with K = coeff * base**exp."""
    if coeff <= 0 or base <= 0:
        raise DomainError("growth threshold must be positive")
    cm1 = Fraction(c) - 1
    V = lcm(Fraction(exp).denominator, cm1.denominator)
    lhs = (Fraction(coeff) * qn1) ** V * Fraction(base) ** int(exp * V)
    rhs = Fraction(qn) ** int(cm1 * V)
    return lhs >= rhs


@dataclass(frozen=True)
class GrowthReport:
    c: Fraction
    K: Fraction
    satisfying: tuple[int, ...]
    pair_count: int
    cutoff: int
    verdict: str  # "growth-rich" | "growth-poor"


def psi_growth_test(table: ConvergentTable, c: Fraction, K: Fraction) -> GrowthReport:
    """Indices n with q_(n+1) >= q_n^(c-1) / K, plus a finite-horizon verdict.

    "Infinitely often" is surrogated by "some satisfying index lands in the
    final third of the horizon"; the raw indices ship with the report so
    callers can re-judge under another convention.
    """
    c, K = Fraction(c), Fraction(K)
    if c < 2:
        raise DomainError("growth test expects c >= 2")
    if table.rows < 2:
        raise DomainError("growth test needs at least two rows")
    pair_count = table.rows - 1
    satisfying = tuple(
        n
        for n in range(pair_count)
        if growth_row_satisfied(table.q[n], table.q[n + 1], c, K)
    )
    cutoff = final_third_cut(pair_count)
    rich = any(n >= cutoff for n in satisfying)
    return GrowthReport(
        c=c,
        K=K,
        satisfying=satisfying,
        pair_count=pair_count,
        cutoff=cutoff,
        verdict="growth-rich" if rich else "growth-poor",
    )


# --- generators --------------------------------------------------------------


def generate_cf(
    rule: str, length: int, digit_cap: int | None = None
) -> ContinuedFraction:
    """Prefix of length N for a named quotient rule.

    Rules: "golden" (all ones), "constant:k", "power:m" (w_(n+1) = q_n**m,
    computed from the table built so far).  If a digit cap is given and some
    q_n would exceed it, HorizonError is raised with the partial prefix
    attached as `.partial`.
    """
    if length < 1:
        raise DomainError("length must be >= 1")
    kind, _, arg = rule.partition(":")
    if kind == "golden":
        return ContinuedFraction(0, (1,) * length, exact=False, rule=rule)
    if kind == "constant":
        k = int(arg) if arg else 2
        if k < 1:
            raise DomainError("constant rule needs k >= 1")
        return ContinuedFraction(0, (k,) * length, exact=False, rule=rule)
    if kind == "power":
        m = int(arg) if arg else 1
        if m < 1:
            raise DomainError("power rule needs m >= 1")
        quotients: list[int] = []
        pm1, qm1 = 1, 0
        pn, qn = 0, 1
        for _ in range(length):
            w = qn**m
            qnext = w * qn + qm1
            if digit_cap is not None and len(str(qnext)) > digit_cap:
                err = HorizonError(
                    f"q_n exceeds {digit_cap} digits after {len(quotients)} quotients"
                )
                err.partial = ContinuedFraction(  # type: ignore[attr-defined]
                    0, tuple(quotients), exact=False, rule=rule
                )
                raise err
            quotients.append(w)
            pn, pm1 = w * pn + pm1, pn
            qn, qm1 = qnext, qn
        return ContinuedFraction(0, tuple(quotients), exact=False, rule=rule)
    raise DomainError(f"unknown generator rule {rule!r}")


def generate_cf_capped(rule: str, length: int, digit_cap: int) -> ContinuedFraction:
    """Like generate_cf but returns the longest prefix fitting the cap."""
    try:
        return generate_cf(rule, length, digit_cap)
    except HorizonError as err:
        partial = getattr(err, "partial", None)
        if partial is None or partial.length < 1:
            raise
        return partial
