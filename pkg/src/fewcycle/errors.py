"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "FewcycleError",
    "GridTooCoarseError",
    "OverflowGuardError",
    "WrongEnvelopeError",
    "StepLimitExceededError",
    "NormDriftError",
    "NotConvergedError",
    "DivergedError",
    "NearSingularAreaError",
    "GridMismatchError",
    "ZeroNormError",
]


class FewcycleError(Exception):
    """Base class for all errors raised by this package."""


class GridTooCoarseError(FewcycleError):
    """Sample grid cannot resolve the fastest oscillation of an integrand."""


class OverflowGuardError(FewcycleError):
    """A complex frequency would drive exp(i*nu*t) past safe magnitudes."""


class WrongEnvelopeError(FewcycleError):
    """An operation restricted to one envelope kind got another."""


class StepLimitExceededError(FewcycleError):
    """Adaptive integrator exceeded its step budget."""


class NormDriftError(FewcycleError):
    """State norm |C|^2+|D|^2 drifted past the tolerated bound."""


class NotConvergedError(FewcycleError):
    """An iteration finished without meeting its residual target."""


class DivergedError(FewcycleError):
    """An iterative sequence is growing instead of contracting."""


class NearSingularAreaError(FewcycleError):
    """Accumulated pulse area too close to an odd multiple of pi/2."""


class GridMismatchError(FewcycleError):
    """Two trajectories do not share the same time grid."""


class ZeroNormError(FewcycleError):
    """A relative metric was requested against an identically zero reference."""
