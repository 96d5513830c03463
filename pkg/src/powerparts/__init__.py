"""Partitions of n into parts floor(a^alpha) with distinct bases.

Exact counting (q(n), q(n,m)) via arbitrary-precision dynamic programming,
the two-variable saddle-point system behind the asymptotic formulas, and
Gaussian local/central limit comparisons of the part-count statistic.
"""

from .asymptotics import (
    AsymptoticEstimate,
    clt_cdf_distance,
    llt_error_scale,
    llt_gaussian_prob,
    llt_ratio_prob,
    qn_asymptotic,
    qnm_asymptotic,
)
from .boltzmann import (
    EvalPoint,
    PartialIndex,
    f_partial,
    f_partial_asymptotic,
    f_value,
    h_asymptotic,
    h_value,
)
from .errors import (
    BracketFailure,
    ConvergenceFailure,
    DomainError,
    GuardExceeded,
    OrderOutOfRange,
    PowerPartsError,
    PrecisionAmbiguous,
    RangeError,
    TruncationError,
)
from .exact import (
    DistributionView,
    ExactTable,
    brute_force,
    brute_force_upto,
    count_table,
    count_tables_upto,
    distribution,
)
from .saddle import (
    MRange,
    SaddlePoint,
    S_of_rho,
    default_spectrum,
    m_range,
    mean_variance,
    solve_r,
    solve_saddle,
    suggest_kmax,
)
from .spectrum import AlphaParam, PartSpectrum, build_spectrum, check_order_bounds, g_of_k
from .specialfn import PolylogRequest, gamma_fn, gen_binomial, normal_cdf, polylog_neg

__version__ = "0.1.0"

__all__ = [
    "AlphaParam",
    "AsymptoticEstimate",
    "BracketFailure",
    "ConvergenceFailure",
    "DistributionView",
    "DomainError",
    "EvalPoint",
    "ExactTable",
    "GuardExceeded",
    "MRange",
    "OrderOutOfRange",
    "PartSpectrum",
    "PartialIndex",
    "PolylogRequest",
    "PowerPartsError",
    "PrecisionAmbiguous",
    "RangeError",
    "S_of_rho",
    "SaddlePoint",
    "TruncationError",
    "brute_force",
    "brute_force_upto",
    "build_spectrum",
    "check_order_bounds",
    "clt_cdf_distance",
    "count_table",
    "count_tables_upto",
    "default_spectrum",
    "distribution",
    "f_partial",
    "f_partial_asymptotic",
    "f_value",
    "g_of_k",
    "gamma_fn",
    "gen_binomial",
    "h_asymptotic",
    "h_value",
    "llt_error_scale",
    "llt_gaussian_prob",
    "llt_ratio_prob",
    "m_range",
    "mean_variance",
    "normal_cdf",
    "polylog_neg",
    "qn_asymptotic",
    "qnm_asymptotic",
    "solve_r",
    "solve_saddle",
    "suggest_kmax",
]
