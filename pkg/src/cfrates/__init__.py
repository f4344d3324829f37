"""Compute-and-forward coefficient search and interference-channel bounds."""

from .lattice import BudgetExceeded, OptimalSet, candidate_bound, canonicalize, lll_reduce, successive_minima
from .linalg import (
    GramMatrix,
    RationalMatrix,
    cholesky,
    exact_rank,
    exact_solve_in_span,
    gram_effective,
    gram_plain,
    sylvester_logdet,
)
from .outage import IntervalSet, OutageParams, in_outage, strong_outage_set, weak_outage_set
from .rates import ComputationResult, comp_rate, effective_variance, optimal_beta
from .symmetric_ic import (
    RegimeReport,
    SymmetricIcSpec,
    closed_form_lower,
    effective_two_user,
    gdof,
    hk_rate,
    hk_rate_default,
    hk_rate_optimized,
    report,
    single_layer_rate,
    tdma_rate,
    treat_as_noise_rate,
    upper_bound,
    upper_bound_loose,
)
from .transform import (
    CfTransform,
    ChannelSpec,
    ModPLift,
    PseudoTriangularization,
    mod_p_lift,
    pseudo_triangularize,
    rate_allocation,
    sum_rate_bounds,
    transform,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CfTransform",
    "ChannelSpec",
    "ComputationResult",
    "GramMatrix",
    "IntervalSet",
    "ModPLift",
    "OptimalSet",
    "OutageParams",
    "PseudoTriangularization",
    "RationalMatrix",
    "RegimeReport",
    "SymmetricIcSpec",
    "candidate_bound",
    "canonicalize",
    "cholesky",
    "closed_form_lower",
    "comp_rate",
    "effective_two_user",
    "effective_variance",
    "exact_rank",
    "exact_solve_in_span",
    "gdof",
    "gram_effective",
    "gram_plain",
    "hk_rate",
    "hk_rate_default",
    "hk_rate_optimized",
    "in_outage",
    "lll_reduce",
    "mod_p_lift",
    "optimal_beta",
    "pseudo_triangularize",
    "rate_allocation",
    "report",
    "single_layer_rate",
    "strong_outage_set",
    "successive_minima",
    "sum_rate_bounds",
    "sylvester_logdet",
    "tdma_rate",
    "transform",
    "treat_as_noise_rate",
    "upper_bound",
    "upper_bound_loose",
    "weak_outage_set",
]
