"""Closed-form and exact dynamics of a two-level system in a few-cycle pulse."""

from .analysis import (
    ErrorSurface,
    applicability,
    extract_contour,
    relative_l2_error,
    sweep,
)
from .approx import (
    AlphaConstant,
    LambdaResult,
    alpha0,
    f0,
    f1_closed,
    finfinity,
    fk_sequence,
    solve_lambda,
    z_series,
)
from .errors import (
    DivergedError,
    FewcycleError,
    GridMismatchError,
    GridTooCoarseError,
    NearSingularAreaError,
    NormDriftError,
    NotConvergedError,
    OverflowGuardError,
    StepLimitExceededError,
    WrongEnvelopeError,
    ZeroNormError,
)
from .pulse import (
    Gaussian,
    Lorentzian,
    PulseParams,
    Sech,
    Square,
    envelope_at,
    field_at,
)
from .solver import (
    SolverSettings,
    solve_exact,
    solve_f1_exact,
    solve_rwa,
)
from .theta import (
    ComplexTrajectory,
    erf_complex,
    spectral_area,
    theta_gaussian_closed,
    theta_quadrature,
    theta_rate,
)

__version__ = "1.0.0"

__all__ = [
    "AlphaConstant",
    "ComplexTrajectory",
    "DivergedError",
    "ErrorSurface",
    "FewcycleError",
    "Gaussian",
    "GridMismatchError",
    "GridTooCoarseError",
    "LambdaResult",
    "Lorentzian",
    "NearSingularAreaError",
    "NormDriftError",
    "NotConvergedError",
    "OverflowGuardError",
    "PulseParams",
    "Sech",
    "SolverSettings",
    "Square",
    "StepLimitExceededError",
    "WrongEnvelopeError",
    "ZeroNormError",
    "alpha0",
    "applicability",
    "envelope_at",
    "erf_complex",
    "extract_contour",
    "f0",
    "f1_closed",
    "field_at",
    "finfinity",
    "fk_sequence",
    "relative_l2_error",
    "solve_exact",
    "solve_f1_exact",
    "solve_lambda",
    "solve_rwa",
    "spectral_area",
    "sweep",
    "theta_gaussian_closed",
    "theta_quadrature",
    "theta_rate",
    "z_series",
]
