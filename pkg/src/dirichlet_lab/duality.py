"""One-dimensional duality experiments between power-pair approximability and
single-power approximability detected through convergent growth.

Points here are continued-fraction prefixes, so the weighted quotient D(x, Q)
cannot be scanned denominator by denominator (the interesting Q reach the
size of the deepest convergents).  Instead each grid Q gets an exact two-sided
bracket:

  upper bound  -- the weighted value of explicit candidates (convergents,
                  intermediate fractions, and for a < 0 their non-reduced
                  multiples pushed up to Q);
  lower bound  -- the best-approximation witness bound: every p/q admits a
                  convergent index m with 2q > q_m and
                  |x - p/q| > 1/(2 q_m q_(m+1)), which floors the weighted
                  value once q^a is bounded via q > q_m/2 (a >= 0) or
                  q <= Q (a < 0).

Verdicts against a threshold alpha are three-valued; no finite computation
here ever claims to refute an asymptotic statement, it only reports certified
violations at its horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .contfrac import (
    ConvergentTable,
    final_third_cut,
    growth_row_satisfied,
    value_bracket,
)
from .errors import DomainError, HorizonError, InvariantViolation
from .ratcore import ExponentPair, WeightedValue

MIN_GRID_POINTS = 6
MIN_TABLE_ROWS = 5


@dataclass(frozen=True)
class DualityParams:
    a: Fraction
    A: Fraction
    b: Fraction
    c: Fraction
    regime: str  # "strict" (c > 2) | "boundary" (c = 2)

    @property
    def exponents(self) -> ExponentPair:
        return ExponentPair(self.a, self.A)


def duality_params(a: Fraction, A: Fraction) -> DualityParams:
    """Exact derived pair b = min(A, A+a) - 1, c = (A - |a|)/b.

    Preconditions are reported by the failed inequality by name.
    """
    a, A = Fraction(a), Fraction(A)
    if not a < 1:
        raise DomainError(f"need a < 1, got a = {a}")
    if not min(A, A + a) > 1:
        raise DomainError(f"need min(A, A + a) > 1, got min = {min(A, A + a)}")
    b = min(A, A + a) - 1
    c = (A - abs(a)) / b
    if c < 2:
        raise DomainError(f"need c >= 2, got c = {c}")
    return DualityParams(a=a, A=A, b=b, c=c, regime="strict" if c > 2 else "boundary")


# --- growth-side bound of the duality ---------------------------------------


@dataclass(frozen=True)
class GrowthBoundReport:
    alpha: Fraction
    rows: tuple[tuple[int, bool], ...]  # (n, q_(n+1) <= alpha^b q_n^(c-1))
    n0: int | None  # least n0 with the bound holding for all n >= n0
    fails_cofinally: bool


def growth_bound_check(
    table: ConvergentTable, params: DualityParams, alpha: Fraction
) -> GrowthBoundReport:
    """Exact per-row verdicts of q_(n+1) <= alpha^b * q_n^(c-1)."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if table.rows < 2:
        raise DomainError("need at least two rows")
    cm1 = params.c - 1
    V = lcm(params.b.denominator, cm1.denominator)
    rhs_alpha = alpha ** int(params.b * V)
    rows = []
    for n in range(table.rows - 1):
        lhs = Fraction(table.q[n + 1]) ** V
        rhs = rhs_alpha * Fraction(table.q[n]) ** int(cm1 * V)
        rows.append((n, lhs <= rhs))
    last_fail = max((n for n, ok in rows if not ok), default=None)
    if last_fail is None:
        n0 = 0
    elif last_fail == rows[-1][0]:
        n0 = None
    else:
        n0 = last_fail + 1
    return GrowthBoundReport(
        alpha=alpha, rows=tuple(rows), n0=n0, fails_cofinally=n0 is None
    )


# --- bracketed weighted quotient for CF points -------------------------------


@dataclass(frozen=True)
class QuotientBracket:
    Q: int
    exponents: ExponentPair
    lower: WeightedValue  # D > lower, strictly
    upper: WeightedValue  # D < upper (prefix brackets are strict)
    witness_p: int
    witness_q: int

    def status(self, alpha: Fraction) -> str:
        """holds | fails | undecided for the predicate D < alpha."""
        if self.upper.cmp_rational(alpha) <= 0:
            return "holds"
        if self.lower.cmp_rational(alpha) >= 0:
            return "fails"
        return "undecided"


def _intermediate_probes(omega: int, rmax: int) -> list[int]:
    probes = {1, 2, 3, rmax, rmax - 1, rmax - 2}
    half = omega // 2
    probes.update({half - 1, half, half + 1})
    r = 4
    while r < rmax:
        probes.add(r)
        r *= 4
    return [r for r in probes if 1 <= r <= rmax]


_LEVEL_WINDOW = 8  # only expansion levels this close to Q can win the minimum


def cf_quotient_bracket(
    table: ConvergentTable, Q: int, e: ExponentPair
) -> QuotientBracket:
    """Exact two-sided bracket on D(x, Q) for a prefix expansion."""
    if table.exact:
        raise DomainError("use the rational oracle for exact expansions")
    if Q < 1:
        raise DomainError("Q must be >= 1")
    R = table.rows
    if R < 3:
        raise HorizonError("bracket needs at least three table rows")
    q, p = table.q, table.p
    if q[R - 1] < 2 * Q:
        raise HorizonError(
            f"table too shallow for Q={Q}: deepest q is {q[R - 1]} < 2Q"
        )
    L = 0
    while L + 1 < R and q[L + 1] <= Q:
        L += 1
    M = L
    while M + 1 < R and q[M + 1] < 2 * Q:
        M += 1

    v = e.power_denom
    av, Av = int(e.a * v), int(e.A * v)
    Qpow = Fraction(Q) ** Av

    # Lower bound from the best-approximation witness structure: each p/q
    # with q <= Q admits an index m <= M with |x - p/q| > 1/(2 q_m q_(m+1))
    # and 2q > q_m.  The per-index floor is nonincreasing in m whenever
    # a <= 1, so only the deepest index matters then.
    def floor_key(m: int) -> Fraction:
        d_floor = Fraction(1, 2 * q[m] * q[m + 1])
        qbase = Fraction(q[m], 2) if e.a >= 0 else Fraction(Q)
        return qbase**av * d_floor**v
    if e.a <= 1:
        lower_key = floor_key(M)
    else:
        lower_key = min(floor_key(m) for m in range(M + 1))
    lower = WeightedValue(v, lower_key * Qpow)

    # Upper bound from explicit candidates: convergents and intermediate
    # fractions of the levels nearest Q (denominators within a bounded factor
    # of Q; deeper trims only cost tightness, never soundness), the integer
    # neighbors, and for a < 0 the non-reduced multiples pushed up to Q.
    cands: set[tuple[int, int]] = {(table.a0, 1), (table.a0 + 1, 1)}
    for n in range(max(0, L - _LEVEL_WINDOW), L + 1):
        cands.add((p[n], q[n]))
        pm, qm = table.seeds_before(n)
        omega = table.quotients[n]
        rmax = min(omega, (Q - qm) // q[n])
        for r in _intermediate_probes(omega, rmax):
            cands.add((r * p[n] + pm, r * q[n] + qm))
    if e.a < 0:
        for pc, qc in list(cands):
            m = Q // qc
            if m > 1:
                cands.add((m * pc, m * qc))

    xlo, xhi, strict = value_bracket(table)
    if not strict:
        raise DomainError("use the rational oracle for exact expansions")
    upper_key = None
    wit = (0, 0)
    for pc, qc in cands:
        if not 1 <= qc <= Q:
            continue
        t = Fraction(pc, qc)
        if t <= xlo:
            d_hi = xhi - t
        elif t >= xhi:
            d_hi = t - xlo
        else:
            raise HorizonError(f"{pc}/{qc} inside the value bracket")
        key = Fraction(qc) ** av * d_hi**v
        if upper_key is None or key < upper_key:
            upper_key, wit = key, (pc, qc)
    assert upper_key is not None
    upper = WeightedValue(v, upper_key * Qpow)
    if upper.cmp(lower) <= 0:
        raise InvariantViolation(
            f"quotient bracket inverted at Q={Q}: upper <= lower"
        )
    return QuotientBracket(
        Q=Q, exponents=e, lower=lower, upper=upper, witness_p=wit[0], witness_q=wit[1]
    )


def horizon_grid(table: ConvergentTable) -> list[int]:
    """Geometric Q values up to half the deepest denominator, plus the
    half-way spike points q_(n+1)//2 where hard approximation shows up."""
    if table.rows < 2:
        raise DomainError("grid needs at least two rows")
    qmax = table.q[table.rows - 1] // 2
    grid = set()
    Q = 2
    while Q <= qmax:
        grid.add(Q)
        Q *= 2
    for n in range(table.rows - 1):
        spike = table.q[n + 1] // 2
        if 2 <= spike <= qmax:
            grid.add(spike)
    return sorted(grid)


def grid_brackets(
    table: ConvergentTable, e: ExponentPair, grid: list[int] | None = None
) -> list[QuotientBracket]:
    if grid is None:
        grid = horizon_grid(table)
    return [cf_quotient_bracket(table, Q, e) for Q in grid]


# --- the two implications at a finite horizon --------------------------------


@dataclass(frozen=True)
class ImplicationReport:
    which: str  # "i" | "ii"
    alpha: Fraction
    C: Fraction
    verdict: str  # consistent | violation | undecided-at-horizon
    lhs_status: str  # holds | fails | undecided (approximability at horizon)
    vacuous: bool
    rhs_rich: bool | None
    growth_satisfying: tuple[int, ...]
    statuses: tuple[tuple[int, str], ...]  # (Q, holds|fails|undecided)


def _lhs_approx_status(brackets: list[QuotientBracket], alpha: Fraction) -> str:
    cut = (2 * len(brackets)) // 3
    final = brackets[cut:]
    statuses = [b.status(alpha) for b in final]
    if any(s == "fails" for s in statuses):
        return "fails"
    if all(s == "holds" for s in statuses):
        return "holds"
    return "undecided"


def _growth_rich(
    table: ConvergentTable, c: Fraction, coeff: Fraction, base: Fraction, exp: Fraction
) -> tuple[bool, tuple[int, ...]]:
    pair_count = table.rows - 1
    satisfying = tuple(
        n
        for n in range(pair_count)
        if growth_row_satisfied(table.q[n], table.q[n + 1], c, coeff, base, exp)
    )
    cutoff = final_third_cut(pair_count)
    return any(n >= cutoff for n in satisfying), satisfying


def _implication(
    which: str,
    table: ConvergentTable,
    params: DualityParams,
    alpha: Fraction,
    C: Fraction,
    brackets: list[QuotientBracket] | None,
) -> ImplicationReport:
    alpha, C = Fraction(alpha), Fraction(C)
    if alpha <= 0 or C <= 0:
        raise DomainError("alpha and C must be positive")
    if brackets is None:
        brackets = grid_brackets(table, params.exponents)
    statuses = tuple((b.Q, b.status(alpha)) for b in brackets)

    def report(verdict, lhs, vacuous, rich=None, sat=()):
        return ImplicationReport(
            which=which,
            alpha=alpha,
            C=C,
            verdict=verdict,
            lhs_status=lhs,
            vacuous=vacuous,
            rhs_rich=rich,
            growth_satisfying=tuple(sat),
            statuses=statuses,
        )

    if len(brackets) < MIN_GRID_POINTS or table.rows < MIN_TABLE_ROWS:
        return report("undecided-at-horizon", "undecided", False)
    lhs = _lhs_approx_status(brackets, alpha)
    # Hypothesis of (i): x approximable at threshold alpha.  Of (ii): not.
    hypothesis = "holds" if which == "i" else "fails"
    if lhs == "undecided":
        return report("undecided-at-horizon", lhs, False)
    if lhs != hypothesis:
        return report("consistent", lhs, True)
    # Conclusion of (i): NOT (C alpha^b)^(-1) psi_c-approximable, i.e. poor at
    # K = C^(-1) alpha^(-b).  Of (ii): C alpha^(-b) psi_c-approximable, i.e.
    # rich at K = C alpha^(-b).
    coeff = 1 / C if which == "i" else C
    rich, sat = _growth_rich(table, params.c, coeff, alpha, -params.b)
    ok = (not rich) if which == "i" else rich
    return report("consistent" if ok else "violation", lhs, False, rich, sat)


def check_implication_i(
    table: ConvergentTable,
    params: DualityParams,
    alpha: Fraction,
    C: Fraction,
    brackets: list[QuotientBracket] | None = None,
) -> ImplicationReport:
    """Approximable at alpha => growth-poor at K = (C alpha^b)^(-1)."""
    return _implication("i", table, params, alpha, C, brackets)


def check_implication_ii(
    table: ConvergentTable,
    params: DualityParams,
    alpha: Fraction,
    C: Fraction,
    brackets: list[QuotientBracket] | None = None,
) -> ImplicationReport:
    """Not approximable at alpha => growth-rich at K = C alpha^(-b)."""
    return _implication("ii", table, params, alpha, C, brackets)


# --- battery + constant sweep -------------------------------------------------


@dataclass(frozen=True)
class BatteryCell:
    point: str
    params: DualityParams
    alpha: Fraction
    report_i: ImplicationReport
    report_ii: ImplicationReport


BracketCache = dict[tuple[str, "DualityParams"], list[QuotientBracket]]


def run_battery(
    tables: dict[str, ConvergentTable],
    param_list: list[DualityParams],
    alphas: list[Fraction],
    C: Fraction,
    cache: BracketCache | None = None,
) -> list[BatteryCell]:
    cells = []
    for name, table in tables.items():
        for params in param_list:
            key = (name, params)
            if cache is not None and key in cache:
                brackets = cache[key]
            else:
                brackets = grid_brackets(table, params.exponents)
                if cache is not None:
                    cache[key] = brackets
            for alpha in alphas:
                cells.append(
                    BatteryCell(
                        point=name,
                        params=params,
                        alpha=alpha,
                        report_i=check_implication_i(table, params, alpha, C, brackets),
                        report_ii=check_implication_ii(
                            table, params, alpha, C, brackets
                        ),
                    )
                )
    return cells


def violation_count(cells: list[BatteryCell]) -> int:
    return sum(
        (c.report_i.verdict == "violation") + (c.report_ii.verdict == "violation")
        for c in cells
    )


def sweep_constant(
    tables: dict[str, ConvergentTable],
    param_list: list[DualityParams],
    alphas: list[Fraction],
    max_exponent: int = 16,
) -> tuple[Fraction, list[BatteryCell]]:
    """Least C = 2^k (k = 0..max_exponent) with zero violation verdicts.

    Larger C weakens the conclusion of (i) and strengthens the witness of
    (ii), so consistency is monotone in C and a linear sweep finds the least
    passing constant.
    """
    cache: BracketCache = {}
    for k in range(max_exponent + 1):
        C = Fraction(2) ** k
        cells = run_battery(tables, param_list, alphas, C, cache)
        if violation_count(cells) == 0:
            return C, cells
    raise HorizonError(f"no constant up to 2^{max_exponent} clears the battery")
