"""Numerical toolkit for Toeplitz operators on Gaussian Fock spaces."""

from .bounds import (
    BandKernelOperator,
    DominantFunction,
    admissible_radius,
    bc_bound_check,
    c_scale,
    c_scale_closed,
    c_scale_sequence,
    constant_growth_exponent,
    fit_power_envelope,
    gamma_and_constant,
    gaussian_envelope_violation,
    kernel_tail,
    kernel_tail_quadrature,
    localization_exponent,
    localization_profile,
    nonneg_sandwich_check,
    pbdop_compression_profile,
    power_envelope_check,
    schur_bound,
)
from .core import (
    FockParams,
    Grid,
    QuadratureRule,
    kernel_coefficients,
    kernel_eval,
    multiindex_enumerate,
    norm_lpt,
    onb_eval,
)
from .errors import (
    DomainError,
    EvaluationError,
    FockError,
    NotIntegrableError,
    NumericalRefusal,
    PreconditionError,
    QuadratureBudgetError,
    StabilizationError,
    TruncationError,
)
from .experiments import ExperimentConfig, ResultRecord, emit, run
from .heat import (
    bmo_seminorm,
    gaussian_offdiag_bound,
    heat_offdiag_check,
    heat_symbol,
    heat_transform,
    pairing,
    semigroup_residual,
)
from .symbols import (
    GaussianRadial,
    IndicatorBall,
    PiecewiseRadial,
    PolyRadialGaussian,
    RadialStep,
    SampledBounded,
    Symbol,
    constant,
    parse_symbol,
)
from .toeplitz import (
    TruncatedOperator,
    apply_integral_operator,
    berezin_of_operator,
    glambda_report,
    hankel_antilinear_matrix,
    load_operator,
    operator_norm,
    project_product,
    save_operator,
    toeplitz_matrix,
    weyl_composition_defect,
    weyl_conjugate,
    weyl_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BandKernelOperator",
    "DomainError",
    "DominantFunction",
    "EvaluationError",
    "ExperimentConfig",
    "FockError",
    "FockParams",
    "GaussianRadial",
    "Grid",
    "IndicatorBall",
    "NotIntegrableError",
    "NumericalRefusal",
    "PiecewiseRadial",
    "PolyRadialGaussian",
    "PreconditionError",
    "QuadratureBudgetError",
    "QuadratureRule",
    "RadialStep",
    "ResultRecord",
    "SampledBounded",
    "StabilizationError",
    "Symbol",
    "TruncatedOperator",
    "TruncationError",
    "admissible_radius",
    "apply_integral_operator",
    "bc_bound_check",
    "berezin_of_operator",
    "bmo_seminorm",
    "c_scale",
    "c_scale_closed",
    "c_scale_sequence",
    "constant",
    "constant_growth_exponent",
    "emit",
    "fit_power_envelope",
    "gamma_and_constant",
    "gaussian_envelope_violation",
    "gaussian_offdiag_bound",
    "glambda_report",
    "hankel_antilinear_matrix",
    "heat_offdiag_check",
    "heat_symbol",
    "heat_transform",
    "kernel_coefficients",
    "kernel_eval",
    "kernel_tail",
    "kernel_tail_quadrature",
    "load_operator",
    "localization_exponent",
    "localization_profile",
    "multiindex_enumerate",
    "nonneg_sandwich_check",
    "norm_lpt",
    "onb_eval",
    "operator_norm",
    "pairing",
    "parse_symbol",
    "pbdop_compression_profile",
    "power_envelope_check",
    "project_product",
    "run",
    "save_operator",
    "schur_bound",
    "semigroup_residual",
    "toeplitz_matrix",
    "weyl_composition_defect",
    "weyl_conjugate",
    "weyl_matrix",
]
