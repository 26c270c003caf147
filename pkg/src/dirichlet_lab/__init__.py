"""Exact-arithmetic experiments on two-parameter Dirichlet approximation."""

from .bestapprox import (
    ApproximationRecord,
    ApproxVerdict,
    QuotientReport,
    best_dist,
    check_dirichlet,
    dirichlet_quotient,
    is_approximable,
    quotient_grid,
    sup_over_sample,
)
from .contfrac import (
    ContinuedFraction,
    ConvergentTable,
    check_best_approx_lemma,
    convergents,
    expand_rational,
    generate_cf,
    intermediate_fractions,
    parse_cf,
    psi_growth_test,
)
from .dspace import (
    AffineAutomorphism,
    DiophantineSpace,
    make_affine,
    map_cube_into_ball,
    std_space,
    transport_check,
)
from .duality import (
    DualityParams,
    check_implication_i,
    check_implication_ii,
    duality_params,
    growth_bound_check,
)
from .errors import DirichletLabError, DomainError, HorizonError, InvariantViolation
from .lattice import LatticeChain, greedy_construct, residue_table, verify_claim
from .ratcore import (
    BigRational,
    ExponentPair,
    RatVec,
    WeightedValue,
    cmp_weighted,
    dist_max,
    nearest_rep,
    parse_rational,
    reduce,
)
from .witness import (
    BoundaryValue,
    WitnessPoint,
    boundary_value,
    build_witness,
    exponent_ladder,
    verify_witness_bound,
)

__version__ = "0.1.0"
