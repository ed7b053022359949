"""Pulse parameters and envelope shapes.

The driving field is E(t) = Ω(t)·cos(ω·t + φ) with a nonnegative envelope
Ω(t) that peaks at the pulse midpoint τ/2 and is hard-truncated to zero
outside the window [0, τ], τ = 2π·cycles/ω. All dynamics in this package
live on that window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

__all__ = [
    "Square",
    "Gaussian",
    "Sech",
    "Lorentzian",
    "Envelope",
    "PulseParams",
    "envelope_at",
    "field_at",
    "field_scalar_fn",
]


@dataclass(frozen=True)
class Square:
    """Flat-top envelope: Ω(t) = Ω₀ on the whole window."""

    def profile(self, u: np.ndarray, tau: float) -> np.ndarray:
        return np.ones_like(u)

    def scalar_profile(self, tau: float):
        return lambda t: 1.0


@dataclass(frozen=True)
class Gaussian:
    """Gaussian envelope Ω(t) = Ω₀·exp(−(t−τ/2)²/(2σ²)), σ = sigma_factor·τ.

    sigma_factor must sit in (0, 0.25]; at the default 0.125 the envelope
    has already fallen to e⁻⁸ of its peak at the window edges, so the hard
    truncation is numerically invisible.
    """

    sigma_factor: float = 0.125

    def __post_init__(self):
        sf = float(self.sigma_factor)
        if not (0.0 < sf <= 0.25) or not math.isfinite(sf):
            raise ValueError(f"sigma_factor must be in (0, 0.25], got {self.sigma_factor}")
        object.__setattr__(self, "sigma_factor", sf)

    def profile(self, u: np.ndarray, tau: float) -> np.ndarray:
        sig = self.sigma_factor * tau
        return np.exp(-((u - 0.5 * tau) ** 2) / (2.0 * sig * sig))

    def scalar_profile(self, tau: float):
        sig = self.sigma_factor * tau
        c = 0.5 * tau
        k = 1.0 / (2.0 * sig * sig)
        return lambda t: math.exp(-((t - c) ** 2) * k)


@dataclass(frozen=True)
class Sech:
    """Ω(t) = Ω₀·sech((t−τ/2)/w), w = width_factor·τ.

    At the default width_factor 0.125 the edges sit 4 widths out, so the
    envelope has dropped to 1/cosh(4) ≈ 0.037 of peak before truncation.
    """

    width_factor: float = 0.125

    def __post_init__(self):
        wf = float(self.width_factor)
        if not (0.0 < wf <= 0.25) or not math.isfinite(wf):
            raise ValueError(f"width_factor must be in (0, 0.25], got {self.width_factor}")
        object.__setattr__(self, "width_factor", wf)

    def profile(self, u: np.ndarray, tau: float) -> np.ndarray:
        w = self.width_factor * tau
        return 1.0 / np.cosh((u - 0.5 * tau) / w)

    def scalar_profile(self, tau: float):
        w = self.width_factor * tau
        c = 0.5 * tau
        return lambda t: 1.0 / math.cosh((t - c) / w)


@dataclass(frozen=True)
class Lorentzian:
    """Ω(t) = Ω₀/(1 + ((t−τ/2)/w)²), w = width_factor·τ.

    With the default width_factor 0.125 the edge value is 1/17 of peak.
    """

    width_factor: float = 0.125

    def __post_init__(self):
        wf = float(self.width_factor)
        if not (0.0 < wf <= 0.25) or not math.isfinite(wf):
            raise ValueError(f"width_factor must be in (0, 0.25], got {self.width_factor}")
        object.__setattr__(self, "width_factor", wf)

    def profile(self, u: np.ndarray, tau: float) -> np.ndarray:
        w = self.width_factor * tau
        x = (u - 0.5 * tau) / w
        return 1.0 / (1.0 + x * x)

    def scalar_profile(self, tau: float):
        w = self.width_factor * tau
        c = 0.5 * tau
        return lambda t: 1.0 / (1.0 + ((t - c) / w) ** 2)


Envelope = Union[Square, Gaussian, Sech, Lorentzian]


@dataclass(frozen=True)
class PulseParams:
    """Parameters of one driven two-level problem.

    Parameters
    ----------
    omega : float
        Carrier angular frequency ω > 0.
    omega_c : float
        Transition (gap) frequency ω꜀ ≥ 0 of the two-level system.
    omega0 : float
        Peak Rabi frequency Ω₀ ≥ 0 of the envelope.
    phi : float
        Carrier-envelope phase φ.
    cycles : float
        Pulse length in carrier cycles, τ = 2π·cycles/ω.
    envelope : Envelope
        Envelope shape descriptor.
    """

    omega: float
    omega_c: float
    omega0: float
    phi: float = 0.0
    cycles: float = 3.0
    envelope: Envelope = field(default_factory=Gaussian)

    def __post_init__(self):
        for name in ("omega", "omega_c", "omega0", "phi", "cycles"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.omega_c < 0.0:
            raise ValueError(f"omega_c must be nonnegative, got {self.omega_c}")
        if self.omega0 < 0.0:
            raise ValueError(f"omega0 must be nonnegative, got {self.omega0}")
        if self.cycles <= 0.0:
            raise ValueError(f"cycles must be positive, got {self.cycles}")

    @property
    def tau(self) -> float:
        """Pulse window length 2π·cycles/ω."""
        return 2.0 * math.pi * self.cycles / self.omega


def envelope_at(p: PulseParams, t) -> np.ndarray:
    """Envelope Ω(t), zero outside [0, τ].

    Accepts scalars or arrays; returns an array of the broadcast shape.
    """
    t = np.asarray(t, dtype=np.float64)
    tau = p.tau
    vals = p.omega0 * p.envelope.profile(t, tau)
    return np.where((t >= 0.0) & (t <= tau), vals, 0.0)


def field_at(p: PulseParams, t) -> np.ndarray:
    """Instantaneous field E(t) = Ω(t)·cos(ω·t + φ)."""
    t = np.asarray(t, dtype=np.float64)
    return envelope_at(p, t) * np.cos(p.omega * t + p.phi)


def field_scalar_fn(p: PulseParams):
    """Fast scalar t → Ω(t)·cos(ω·t + φ) for tight integration loops.

    The returned closure assumes 0 ≤ t ≤ τ and skips the window test.
    """
    prof = p.envelope.scalar_profile(p.tau)
    om0, om, phi = p.omega0, p.omega, p.phi
    return lambda t: om0 * prof(t) * math.cos(om * t + phi)
