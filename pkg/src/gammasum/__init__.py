"""Numerical CDFs built on single-integral coefficient extraction.

Evaluates the distribution function of a sum of independent gamma
variables with arbitrary positive shapes and scales, the CDF of a
positive definite Gaussian quadratic form, and the joint CDF of a
small-dimension multivariate gamma distribution. Series and Monte
Carlo oracles and a batch-capable CLI are included; see README.md.
"""

from .core import (
    CdfEstimate,
    DerivedParams,
    GammaSumParams,
    QuadratureConfig,
    cdf,
    choose_r,
    derive_params,
    integrand,
    quantile,
)
from .errors import (
    BranchTrackingError,
    ConfigError,
    ConvergenceError,
    DomainError,
    GammaSumError,
    NormalizationError,
    NotPositiveDefiniteError,
    PrecisionError,
)
from .genfun import GfunResult, g_at_one, g_closed, g_closed_alt, g_eval, g_series
from .mvgamma import (
    MvDerived,
    MvGammaParams,
    existence_caveat,
    mv_cdf,
    mv_derive,
    mv_integrand,
)
from .oracles import (
    McResult,
    SeriesResult,
    mc_cdf,
    mc_mvgamma,
    mc_qform,
    series_cdf,
    series_coefficients,
)
from .qform import (
    EigenDecomp,
    SymMatrix,
    jacobi_eigen,
    qform_cdf,
    qform_eigenvalues,
    sym_sqrt,
)
from .special import (
    complex_pow_principal,
    complex_reg_lower_gamma,
    erf,
    gamma_pdf,
    log_gamma,
    reg_lower_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "BranchTrackingError",
    "CdfEstimate",
    "ConfigError",
    "ConvergenceError",
    "DerivedParams",
    "DomainError",
    "EigenDecomp",
    "GammaSumError",
    "GammaSumParams",
    "GfunResult",
    "McResult",
    "MvDerived",
    "MvGammaParams",
    "NormalizationError",
    "NotPositiveDefiniteError",
    "PrecisionError",
    "QuadratureConfig",
    "SeriesResult",
    "SymMatrix",
    "cdf",
    "choose_r",
    "complex_pow_principal",
    "complex_reg_lower_gamma",
    "derive_params",
    "erf",
    "existence_caveat",
    "g_at_one",
    "g_closed",
    "g_closed_alt",
    "g_eval",
    "g_series",
    "gamma_pdf",
    "integrand",
    "jacobi_eigen",
    "log_gamma",
    "mc_cdf",
    "mc_mvgamma",
    "mc_qform",
    "mv_cdf",
    "mv_derive",
    "mv_integrand",
    "quantile",
    "qform_cdf",
    "qform_eigenvalues",
    "reg_lower_gamma",
    "series_cdf",
    "series_coefficients",
    "sym_sqrt",
    "__version__",
]
