"""binomoment: exact binomial central moments and moment-optimised Chebyshev planning."""

__version__ = "1.0.0"

from .argmax import argmax_report, compute_mn, folded_moment_polynomial, is_half_argmax, mn_table, moment_polynomial
from .chebyshev import (
    asymptotic_bound,
    asymptotic_profile,
    best_plan,
    bound_profile,
    cheb_bound,
    exact_tail,
    min_sample_size,
    rule_of_thumb_order,
)
from .compositions import composition_size_weights, enumerate_compositions, multinomial
from .errors import (
    BinomomentError,
    IndistinguishableMaximaError,
    InternalConsistencyError,
    InvalidArgumentError,
    ResourceLimitError,
)
from .moments import (
    f_term,
    f_term_derivative,
    gaussian_even_moment,
    moment,
    moment_bruteforce,
    moment_derivative_composition,
    moment_general,
    moment_general_composition,
    moment_half_binomsum,
    moment_half_composition,
    moment_half_grouped,
    moment_half_recurrence,
    recurrence_coeffs,
)
from .montecarlo import mc_tail
from .polynomial import derivative, isolate_roots, sturm_root_count
from .rational import parse_rational, render_rational

__all__ = [
    "__version__",
    "BinomomentError",
    "IndistinguishableMaximaError",
    "InternalConsistencyError",
    "InvalidArgumentError",
    "ResourceLimitError",
    "argmax_report",
    "asymptotic_bound",
    "asymptotic_profile",
    "best_plan",
    "bound_profile",
    "cheb_bound",
    "composition_size_weights",
    "compute_mn",
    "derivative",
    "enumerate_compositions",
    "exact_tail",
    "f_term",
    "f_term_derivative",
    "folded_moment_polynomial",
    "gaussian_even_moment",
    "is_half_argmax",
    "isolate_roots",
    "mc_tail",
    "min_sample_size",
    "mn_table",
    "moment",
    "moment_bruteforce",
    "moment_derivative_composition",
    "moment_general",
    "moment_general_composition",
    "moment_half_binomsum",
    "moment_half_composition",
    "moment_half_grouped",
    "moment_half_recurrence",
    "moment_polynomial",
    "multinomial",
    "parse_rational",
    "recurrence_coeffs",
    "render_rational",
    "rule_of_thumb_order",
    "sturm_root_count",
]
