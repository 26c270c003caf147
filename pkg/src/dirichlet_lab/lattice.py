"""Greedy residue chains: pick denominators whose residues are nearest the
span of the residues chosen so far, subject to lying in the open Dirichlet
domain of the lattice they generate, and check the product bound and the
per-step geometric decay on the result.

All geometry is exact.  Residues are scaled by the common denominator of x to
integer vectors; squared distances to spans become ratios of integer Gram
determinants, and Dirichlet-domain membership is an exact closest-vector
existence test (branch-and-bound over Gram-Schmidt pivots of the current
basis, enumerated center-out so violating lattice vectors surface
immediately).  Conventions, chosen for determinism: zero residues are never
eligible (a zero vector can never extend an independent set), boundary ties
count as outside the domain, and equal distances go to the smaller q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvariantViolation
from .ratcore import RatVec, nearest_rep

Vec = tuple[int, ...]


@dataclass(frozen=True)
class ChainStep:
    q: int
    residue: RatVec
    norm: Fraction  # max norm; the factor entering the product bound
    norm2_sq: Fraction  # squared Euclidean norm; base of the decay chain
    perp_dist_sq: Fraction  # squared Euclidean distance to the earlier span


@dataclass(frozen=True)
class LatticeChain:
    d: int
    Q: int
    x: RatVec
    steps: tuple[ChainStep, ...]

    @property
    def k(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ClaimReport:
    k: int
    product: Fraction  # prod of max-norm residue sizes
    ratio: Fraction  # Q * product
    independent: bool
    decay_ok: bool
    degenerate: bool  # empty chain (all residues integral)


def residue_table(x: RatVec, Q: int) -> list[tuple[int, RatVec, Fraction]]:
    """(q, residue, max norm) for q = 1..Q via exact folding."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    out = []
    for q in range(1, Q + 1):
        rep, norm = nearest_rep(x, q)
        out.append((q, rep, norm))
    return out


def _dot(u: Vec, w: Vec) -> int:
    return sum(a * b for a, b in zip(u, w))


def _det(mat: list[list[int]]) -> int:
    """Exact determinant of a small integer matrix (cofactor expansion)."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = 0
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        total += sign * mat[0][j] * _det(minor)
        sign = -sign
    return total


def _gram(basis: list[Vec]) -> list[list[int]]:
    return [[_dot(u, w) for w in basis] for u in basis]


def _adjugate(mat: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    if n == 0:
        return []
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


class _SpanGeometry:
    """Bordered-determinant machinery for one greedy step's basis."""

    def __init__(self, basis: list[Vec]):
        self.basis = basis
        gram = _gram(basis)
        self.det = _det(gram)  # 1 for the empty basis
        if self.det <= 0:
            raise InvariantViolation("chain basis became dependent")
        self.adj = _adjugate(gram)

    def dist_sq_numerator(self, z: Vec) -> int:
        """det(Gram(basis + z)); squared distance to the span is this over
        det(Gram(basis))."""
        w = [_dot(b, z) for b in self.basis]
        quad = sum(
            w[i] * self.adj[i][j] * w[j]
            for i in range(len(w))
            for j in range(len(w))
        )
        return self.det * _dot(z, z) - quad


class _DirichletDomain:
    """Exact open-domain membership test for the lattice of a basis.

    z is in the domain iff no nonzero lattice vector lies at distance <= |z|.
    The search enumerates coefficients over exact Gram-Schmidt pivots of the
    basis (budget shrinks level by level), so the test set is finite and
    provably sufficient; ties on the boundary report non-membership.
    """

    def __init__(self, basis: list[Vec]):
        self.basis = [tuple(Fraction(c) for c in b) for b in basis]
        self.k = len(basis)
        self.gs: list[tuple[Fraction, ...]] = []
        self.bstar_sq: list[Fraction] = []
        self.mu: list[list[Fraction]] = []
        for b in self.basis:
            coeffs = []
            vec = list(b)
            for star, ssq in zip(self.gs, self.bstar_sq):
                m = sum(x * y for x, y in zip(b, star)) / ssq
                coeffs.append(m)
                vec = [x - m * y for x, y in zip(vec, star)]
            self.mu.append(coeffs)
            self.gs.append(tuple(vec))
            ssq = sum(x * x for x in vec)
            if ssq == 0:
                raise InvariantViolation("domain basis is dependent")
            self.bstar_sq.append(ssq)

    def contains(self, z: Vec) -> bool:
        if self.k == 0:
            return True
        # Fast path: single generators rule out most outsiders.
        for bi in range(self.k):
            b = self.basis[bi]
            dot2 = 2 * sum(Fraction(zc) * bc for zc, bc in zip(z, b))
            bsq = sum(bc * bc for bc in b)
            if abs(dot2) >= bsq:
                return False
        # Projection coefficients of z on the GS frame.
        c = [
            sum(Fraction(zc) * sc for zc, sc in zip(z, star)) / ssq
            for star, ssq in zip(self.gs, self.bstar_sq)
        ]
        budget = sum(ci * ci * ssq for ci, ssq in zip(c, self.bstar_sq))
        n = [0] * self.k
        return not self._search(self.k - 1, budget, c, n)

    def _search(self, level: int, budget: Fraction, c, n) -> bool:
        """True iff some nonzero coefficient vector keeps the weighted square
        sum within budget (i.e. a violating lattice vector exists)."""
        e = c[level] - sum(
            n[l] * self.mu[l][level] for l in range(level + 1, self.k)
        )
        ssq = self.bstar_sq[level]
        center = round(e)
        offset = 0
        while True:
            hit = False
            for cand in {center + offset, center - offset}:
                y = e - cand
                cost = y * y * ssq
                if cost <= budget:
                    hit = True
                    n[level] = cand
                    if level == 0:
                        if any(n):
                            return True
                    elif self._search(level - 1, budget - cost, c, n):
                        return True
            n[level] = 0
            if not hit:
                # center-out rings: once a whole ring misses the budget,
                # every farther ring misses it too.
                return False
            offset += 1


def greedy_construct(x: RatVec, Q: int) -> LatticeChain:
    """Run the greedy selection to exhaustion (at most d steps)."""
    if Q < 1:
        raise DomainError("Q must be >= 1")
    den = x.common_denominator()
    nums = [(c.numerator * (den // c.denominator)) % den for c in x]
    residues: list[tuple[int, Vec]] = []
    for q in range(1, Q + 1):
        z = []
        for n in nums:
            t = (q * n) % den
            if 2 * t > den:
                t -= den
            z.append(t)
        if any(z):
            residues.append((q, tuple(z)))

    steps: list[ChainStep] = []
    basis: list[Vec] = []
    while True:
        if len(steps) > x.dim:
            raise InvariantViolation("chain exceeded the ambient dimension")
        geom = _SpanGeometry(basis)
        domain = _DirichletDomain(basis)
        ranked = sorted(
            ((geom.dist_sq_numerator(z), q, z) for q, z in residues),
            key=lambda t: (t[0], t[1]),
        )
        chosen = None
        for num, q, z in ranked:
            if domain.contains(z):
                chosen = (num, q, z)
                break
        if chosen is None:
            break
        num, q, z = chosen
        if num <= 0:
            raise InvariantViolation(
                f"CLAIM VIOLATION: domain member at q={q} is dependent on the chain"
            )
        steps.append(
            ChainStep(
                q=q,
                residue=RatVec(tuple(Fraction(zi, den) for zi in z)),
                norm=Fraction(max(abs(zi) for zi in z), den),
                norm2_sq=Fraction(_dot(z, z), den * den),
                perp_dist_sq=Fraction(num, geom.det * den * den),
            )
        )
        basis.append(z)
        residues = [(q_, z_) for q_, z_ in residues if q_ != q]
    return LatticeChain(d=x.dim, Q=Q, x=x, steps=tuple(steps))


def verify_claim(chain: LatticeChain) -> ClaimReport:
    """Product bound data, exact independence, and the decay check
    perp_dist_j^2 >= (3/4)^j * |y_j|_2^2 (with perp_dist_j <= |y_j|_2)."""
    product = Fraction(1)
    decay_ok = True
    for j, step in enumerate(chain.steps):
        product *= step.norm
        lower = Fraction(3, 4) ** j * step.norm2_sq
        if not (lower <= step.perp_dist_sq <= step.norm2_sq):
            decay_ok = False
    den = chain.x.common_denominator()
    zs = [
        tuple(int(c * den) for c in step.residue.coords) for step in chain.steps
    ]
    independent = _det(_gram(zs)) > 0 if zs else True
    if chain.steps and not independent:
        raise InvariantViolation("CLAIM VIOLATION: dependent chain")
    return ClaimReport(
        k=chain.k,
        product=product,
        ratio=product * chain.Q,
        independent=independent,
        decay_ok=decay_ok,
        degenerate=chain.k == 0,
    )
