"""Exact-arithmetic construction and certification of the type A minuscule
polynomial family: real-rootedness, interlacing, gamma-positivity, weak
Hurwitz stability of the difference polynomials, total positivity of the
coefficient matrix, and asymptotic normality of the coefficients.

Library entry points are re-exported here; the ``minuscule`` console script
(see :mod:`minuscule.cli`) drives batch generation, certification and
reporting.
"""

from .certify import (
    Certificate,
    SturmChain,
    certify_coeff_properties,
    certify_gamma_positive,
    certify_interlacing,
    certify_real_rooted,
    certify_weak_hurwitz,
    check_multiplier_nseq,
    count_roots_in,
    isolate_roots,
    isolate_roots_with_multiplicity,
    sturm_chain,
)
from .errors import (
    BudgetError,
    ConsistencyError,
    DegreeCapError,
    ExactnessError,
    MinusculeError,
    NotRealRootedError,
    RefinementError,
)
from .exact_core import (
    DyadicInterval,
    ExactPoly,
    even_odd_split,
    even_part_extract,
    format_rational,
    is_palindromic,
    parse_rational,
    poly_gcd,
    reverse,
    square_free_decomposition,
    square_free_part,
)
from .families import (
    D_closed,
    D_closed_coefficient,
    D_direct,
    ExactMatrix,
    GammaVector,
    build_matrices,
    chebyshev_U,
    chebyshev_U_sum,
    f_poly,
    g_poly,
    gamma_half_sums,
    gamma_vector,
    h_poly,
    minuscule_closed,
    minuscule_egf_check,
    minuscule_sum,
    toeplitz_matrix,
)
from .oracles import (
    NumericRoots,
    chebyshev_product_deviation,
    numeric_roots,
    powerset_refined_gf,
    symmetric_difference_gf,
    symmetric_difference_sum,
)
from .stats import (
    CoeffStats,
    RationalInterval,
    coeff_stats,
    exact_mean,
    exact_variance,
    kolmogorov_distance,
    roots_stats,
    second_derivative_identity,
)
from .totalpos import minor, minors_all_TP, neville_TP, pf_truncation_check

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "Certificate",
    "CoeffStats",
    "ConsistencyError",
    "D_closed",
    "D_closed_coefficient",
    "D_direct",
    "DegreeCapError",
    "DyadicInterval",
    "ExactMatrix",
    "ExactPoly",
    "ExactnessError",
    "GammaVector",
    "MinusculeError",
    "NotRealRootedError",
    "NumericRoots",
    "RationalInterval",
    "RefinementError",
    "SturmChain",
    "build_matrices",
    "certify_coeff_properties",
    "certify_gamma_positive",
    "certify_interlacing",
    "certify_real_rooted",
    "certify_weak_hurwitz",
    "chebyshev_U",
    "chebyshev_U_sum",
    "chebyshev_product_deviation",
    "check_multiplier_nseq",
    "coeff_stats",
    "count_roots_in",
    "even_odd_split",
    "even_part_extract",
    "exact_mean",
    "exact_variance",
    "f_poly",
    "format_rational",
    "g_poly",
    "gamma_half_sums",
    "gamma_vector",
    "h_poly",
    "is_palindromic",
    "isolate_roots",
    "isolate_roots_with_multiplicity",
    "kolmogorov_distance",
    "minor",
    "minors_all_TP",
    "minuscule_closed",
    "minuscule_egf_check",
    "minuscule_sum",
    "neville_TP",
    "numeric_roots",
    "parse_rational",
    "pf_truncation_check",
    "poly_gcd",
    "powerset_refined_gf",
    "reverse",
    "roots_stats",
    "second_derivative_identity",
    "square_free_decomposition",
    "square_free_part",
    "sturm_chain",
    "symmetric_difference_gf",
    "symmetric_difference_sum",
    "toeplitz_matrix",
]
