"""Exact evaluation and asymptotic verification of the cotangent sum c0(h/k).

The package evaluates c0(h/k) = -sum_{m=1}^{k-1} (m/k) cot(pi*m*h/k) exactly
as a finite sum, provides the closed forms and finite trigonometric identities
surrounding it, and measures how well the two-term asymptotics

    c0(1/b) = (1/pi) b log b - (b/pi)(log 2pi - gamma) + delta(b)

track the exact values: the residual delta(b) stays bounded rather than
growing like log b, and the scan tooling here quantifies that.
"""

from .asymptotics import (
    LogFitReport,
    ResidualRecord,
    c0_main_terms,
    estimate_C0,
    f_term,
    inner_block_expansion,
    r_series,
    residual_scan,
    s_sum_asymptotic,
    s_sum_direct,
    taylor_f1,
    taylor_f2,
)
from .exact import (
    EstermannValue,
    FracIdentityResult,
    c0,
    cot_cos_identity_residual,
    cot_derivative,
    cot_row_sum_zero,
    estermann_at_zero,
    floor_via_exponential_sum,
    frac_via_cot_sin,
)
from .numerics import (
    CapacityError,
    ConstantEstimate,
    DEFAULT_CONFIG,
    NumericalConsistencyError,
    PoleError,
    PrecisionConfig,
    PreconditionError,
    ReducedFraction,
    SummationStrategy,
    bernoulli,
    cot_reduced,
    euler_gamma,
    log_two_pi,
    sum_strategy,
)
from .series import (
    SeriesTruncation,
    c0_series_partial,
    c0_series_with_truncation,
    divisible_harmonic_sum,
    g_lemma_decomposition_check,
    g_partial,
    harmonic_sum,
    sin_series_partial,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConstantEstimate",
    "DEFAULT_CONFIG",
    "EstermannValue",
    "FracIdentityResult",
    "LogFitReport",
    "NumericalConsistencyError",
    "PoleError",
    "PrecisionConfig",
    "PreconditionError",
    "ReducedFraction",
    "ResidualRecord",
    "SeriesTruncation",
    "SummationStrategy",
    "bernoulli",
    "c0",
    "c0_main_terms",
    "c0_series_partial",
    "c0_series_with_truncation",
    "cot_cos_identity_residual",
    "cot_derivative",
    "cot_reduced",
    "cot_row_sum_zero",
    "divisible_harmonic_sum",
    "estermann_at_zero",
    "estimate_C0",
    "euler_gamma",
    "f_term",
    "floor_via_exponential_sum",
    "frac_via_cot_sin",
    "g_lemma_decomposition_check",
    "g_partial",
    "harmonic_sum",
    "inner_block_expansion",
    "log_two_pi",
    "r_series",
    "residual_scan",
    "s_sum_asymptotic",
    "s_sum_direct",
    "sin_series_partial",
    "sum_strategy",
    "taylor_f1",
    "taylor_f2",
    "__version__",
]
