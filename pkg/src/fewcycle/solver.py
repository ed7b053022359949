"""Numerically exact references: the full two-level ODE and special cases.

The state (C, D) obeys

    dC/dt = -i·Ω(t)·cos(ω·t+φ)·e^{+iω꜀·t}·D
    dD/dt = -i·Ω(t)·cos(ω·t+φ)·e^{-iω꜀·t}·C

from (C, D) = (0, 1); the exact flow preserves |C|²+|D|². The integrator
is an embedded Dormand-Prince 5(4) pair whose accepted steps are clamped
to land exactly on every requested output time, so reported samples carry
integration accuracy only, with no interpolation layer on top.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NormDriftError, OverflowGuardError, StepLimitExceededError
from .numerics import cumulative_simpson, simpson
from .pulse import PulseParams, field_scalar_fn
from .theta import ComplexTrajectory, spectral_area, theta_quadrature, theta_rate

__all__ = [
    "MASK_THRESHOLD",
    "SolverSettings",
    "QuantumState",
    "solve_exact",
    "solve_f1_exact",
    "solve_rwa",
]

# |D| at or below this marks f = C/D as unusable at that sample.
MASK_THRESHOLD = 1e-6
# Norm drift beyond this is a hard failure, not a tolerance question.
_NORM_LIMIT = 1e-6

# Dormand-Prince 5(4) tableau.
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# 5th-order weights minus the embedded 4th-order weights.
_E1 = 35.0 / 384.0 - 5179.0 / 57600.0
_E3 = 500.0 / 1113.0 - 7571.0 / 16695.0
_E4 = 125.0 / 192.0 - 393.0 / 640.0
_E5 = -2187.0 / 6784.0 + 92097.0 / 339200.0
_E6 = 11.0 / 84.0 - 187.0 / 2100.0
_E7 = -1.0 / 40.0


@dataclass(frozen=True)
class SolverSettings:
    """Tolerances and output layout of the exact solver."""

    rtol: float = 1e-10
    atol: float = 1e-12
    K_out: int = 2000
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.K_out < 2:
            raise ValueError("K_out must be at least 2")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass(frozen=True)
class QuantumState:
    """Instantaneous amplitudes of the two levels."""

    t: float
    c: complex
    d: complex

    @property
    def norm(self) -> float:
        return abs(self.c) ** 2 + abs(self.d) ** 2


def _integrate(p: PulseParams, c0: complex, d0: complex, t_grid: np.ndarray,
               rtol: float, atol: float, max_steps: int):
    """DOPRI5(4) over t_grid[0]..t_grid[-1], recording every grid point."""
    field = field_scalar_fn(p)
    wc = p.omega_c

    def rhs(t: float, c: complex, d: complex):
        g = -1j * field(t)
        ph = cmath.exp(1j * (wc * t))
        return g * ph * d, g * ph.conjugate() * c

    n_out = t_grid.shape[0]
    cs = np.empty(n_out, dtype=np.complex128)
    ds = np.empty(n_out, dtype=np.complex128)
    cs[0], ds[0] = c0, d0

    t = float(t_grid[0])
    t_end = float(t_grid[-1])
    c, d = complex(c0), complex(d0)
    k1c, k1d = rhs(t, c, d)
    h = min((t_end - t) * 1e-3, float(t_grid[1]) - t)
    tiny = 4.0 * np.finfo(np.float64).eps * (t_end - float(t_grid[0]))
    jo = 1
    steps = 0

    while jo < n_out:
        if steps >= max_steps:
            raise StepLimitExceededError(f"exceeded {max_steps} steps at t={t:g}")
        target = float(t_grid[jo])
        hs = h
        clamped = False
        if t + hs >= target - tiny:
            hs = target - t
            clamped = True

        k2c, k2d = rhs(t + _C2 * hs, c + hs * (_A21 * k1c), d + hs * (_A21 * k1d))
        k3c, k3d = rhs(
            t + _C3 * hs,
            c + hs * (_A31 * k1c + _A32 * k2c),
            d + hs * (_A31 * k1d + _A32 * k2d),
        )
        k4c, k4d = rhs(
            t + _C4 * hs,
            c + hs * (_A41 * k1c + _A42 * k2c + _A43 * k3c),
            d + hs * (_A41 * k1d + _A42 * k2d + _A43 * k3d),
        )
        k5c, k5d = rhs(
            t + _C5 * hs,
            c + hs * (_A51 * k1c + _A52 * k2c + _A53 * k3c + _A54 * k4c),
            d + hs * (_A51 * k1d + _A52 * k2d + _A53 * k3d + _A54 * k4d),
        )
        k6c, k6d = rhs(
            t + hs,
            c + hs * (_A61 * k1c + _A62 * k2c + _A63 * k3c + _A64 * k4c + _A65 * k5c),
            d + hs * (_A61 * k1d + _A62 * k2d + _A63 * k3d + _A64 * k4d + _A65 * k5d),
        )
        c_new = c + hs * (_B1 * k1c + _B3 * k3c + _B4 * k4c + _B5 * k5c + _B6 * k6c)
        d_new = d + hs * (_B1 * k1d + _B3 * k3d + _B4 * k4d + _B5 * k5d + _B6 * k6d)
        t_new = target if clamped else t + hs
        k7c, k7d = rhs(t_new, c_new, d_new)

        ec = hs * (_E1 * k1c + _E3 * k3c + _E4 * k4c + _E5 * k5c + _E6 * k6c + _E7 * k7c)
        ed = hs * (_E1 * k1d + _E3 * k3d + _E4 * k4d + _E5 * k5d + _E6 * k6d + _E7 * k7d)
        sc_c = atol + rtol * max(abs(c), abs(c_new))
        sc_d = atol + rtol * max(abs(d), abs(d_new))
        err = math.sqrt(0.5 * ((abs(ec) / sc_c) ** 2 + (abs(ed) / sc_d) ** 2))
        steps += 1

        if err <= 1.0:
            t, c, d = t_new, c_new, d_new
            k1c, k1d = k7c, k7d
            if clamped:
                cs[jo], ds[jo] = c, d
                jo += 1
            fac = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h = hs * fac
        else:
            h = hs * max(0.2, 0.9 * err ** -0.2)

    return cs, ds, steps


def _solve_fixed(p: PulseParams, n_steps: int, c0: complex = 0.0, d0: complex = 1.0):
    """Fixed uniform steps, no error control. Convergence-order harness."""
    field = field_scalar_fn(p)
    wc = p.omega_c

    def rhs(t: float, c: complex, d: complex):
        g = -1j * field(t)
        ph = cmath.exp(1j * (wc * t))
        return g * ph * d, g * ph.conjugate() * c

    tau = p.tau
    hs = tau / n_steps
    t = 0.0
    c, d = complex(c0), complex(d0)
    k1c, k1d = rhs(t, c, d)
    for i in range(n_steps):
        t = i * hs
        k2c, k2d = rhs(t + _C2 * hs, c + hs * (_A21 * k1c), d + hs * (_A21 * k1d))
        k3c, k3d = rhs(
            t + _C3 * hs,
            c + hs * (_A31 * k1c + _A32 * k2c),
            d + hs * (_A31 * k1d + _A32 * k2d),
        )
        k4c, k4d = rhs(
            t + _C4 * hs,
            c + hs * (_A41 * k1c + _A42 * k2c + _A43 * k3c),
            d + hs * (_A41 * k1d + _A42 * k2d + _A43 * k3d),
        )
        k5c, k5d = rhs(
            t + _C5 * hs,
            c + hs * (_A51 * k1c + _A52 * k2c + _A53 * k3c + _A54 * k4c),
            d + hs * (_A51 * k1d + _A52 * k2d + _A53 * k3d + _A54 * k4d),
        )
        k6c, k6d = rhs(
            t + hs,
            c + hs * (_A61 * k1c + _A62 * k2c + _A63 * k3c + _A64 * k4c + _A65 * k5c),
            d + hs * (_A61 * k1d + _A62 * k2d + _A63 * k3d + _A64 * k4d + _A65 * k5d),
        )
        c = c + hs * (_B1 * k1c + _B3 * k3c + _B4 * k4c + _B5 * k5c + _B6 * k6c)
        d = d + hs * (_B1 * k1d + _B3 * k3d + _B4 * k4d + _B5 * k5d + _B6 * k6d)
        k1c, k1d = rhs((i + 1) * hs, c, d)
    return c, d


def _masked_ratio(num: np.ndarray, den: np.ndarray):
    mask = np.abs(den) <= MASK_THRESHOLD
    safe = np.where(mask, 1.0, den)
    vals = np.where(mask, 0.0, num / safe)
    return vals, mask


def solve_exact(p: PulseParams, settings: SolverSettings = SolverSettings()):
    """Integrate the two-level system over [0, τ] from (C, D) = (0, 1).

    Returns (C, D, f) trajectories on the uniform K_out grid; f = C/D with
    samples masked wherever |D| <= 1e-6. Raises NormDriftError if
    |C|²+|D|² leaves 1 by more than 1e-6 anywhere on the grid.
    """
    tau = p.tau
    t_grid = np.linspace(0.0, tau, settings.K_out + 1)
    cs, ds, _ = _integrate(p, 0.0, 1.0, t_grid, settings.rtol, settings.atol, settings.max_steps)

    drift = np.max(np.abs(np.abs(cs) ** 2 + np.abs(ds) ** 2 - 1.0))
    if drift > _NORM_LIMIT:
        raise NormDriftError(f"norm drift {drift:.3e} exceeds {_NORM_LIMIT:g}")

    fs, mask = _masked_ratio(cs, ds)
    return (
        ComplexTrajectory(0.0, tau, cs),
        ComplexTrajectory(0.0, tau, ds),
        ComplexTrajectory(0.0, tau, fs, mask=mask),
    )


def solve_f1_exact(p: PulseParams, K: int) -> ComplexTrajectory:
    """Exact solution of the first linearized coherence-ratio equation.

    f₁ solves df₁/dt = 2θθ̇*f₁ + iθ²θ̇* − iθ̇ with f₁(0) = 0, whose closed
    solution is f₁(t) = −(i/2)·[θ(t) + ∫₀ᵗ θ̇(t′)·e^{α(t′,t)} dt′] with
    α(t′,t) = 2∫_{t′}^{t} θθ̇* dt″. Evaluated with one Simpson pass per
    output time (O(K²)), keeping every exponent in pairwise-difference
    form B(t)−B(t′) so nothing large is ever exponentiated alone.
    """
    th = theta_quadrature(p, p.omega_c, K)
    t = th.t
    h = th.h
    rate = theta_rate(p, t, p.omega_c)
    big_b = cumulative_simpson(th.samples * np.conj(rate), h)

    spread = 2.0 * (np.max(big_b.real) - np.min(big_b.real))
    if spread > 700.0:
        raise OverflowGuardError(f"exp spread {spread:.3g} in the memory kernel")

    f1 = np.empty(K + 1, dtype=np.complex128)
    f1[0] = 0.0
    for j in range(1, K + 1):
        kernel = np.exp(2.0 * (big_b[j] - big_b[: j + 1]))
        f1[j] = -0.5j * (th.samples[j] + simpson(rate[: j + 1] * kernel, h))
    return ComplexTrajectory(0.0, p.tau, f1)


def solve_rwa(p: PulseParams, K: int):
    """Rotating-wave reference on the uniform grid.

    With A(t) the accumulated envelope area, C = −i·sin(A/2),
    D = cos(A/2), f = −i·tan(A/2); f is masked where |cos(A/2)| <= 1e-6.
    """
    area = spectral_area(p, 0.0, K)
    a_half = 0.5 * area.samples.real
    cs = -1j * np.sin(a_half)
    ds = np.cos(a_half) + 0j
    fs, mask = _masked_ratio(cs, ds)
    tau = p.tau
    return (
        ComplexTrajectory(0.0, tau, cs),
        ComplexTrajectory(0.0, tau, ds),
        ComplexTrajectory(0.0, tau, fs, mask=mask),
    )
