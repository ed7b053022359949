"""Closed-form approximation ladder for the two-level amplitude ratio.

Every routine here returns trajectories of the off-diagonal ratio f = C/D
built from the accumulated spectral integral theta rather than from the
differential equation directly.  The ladder is, in order of cost:

  f0          lowest order, -i * theta evaluated at the transition frequency
  f1_closed   first correction, theta re-evaluated at a shifted frequency
  fk_sequence self-consistent refinements of the shift constant
  finfinity   the limit form, a single complex shift lambda solving a
              scalar fixed-point equation

plus the small-transition-frequency power series (z_series).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivergedError,
    GridTooCoarseError,
    NearSingularAreaError,
    NotConvergedError,
    OverflowGuardError,
)
from .numerics import cumulative_simpson, derivative_uniform, simpson
from .pulse import PulseParams, field_at
from .theta import ComplexTrajectory, theta_quadrature, theta_rate

_LAMBDA_MAX_ITERS = 100
_LAMBDA_DAMPING = 0.5
_LAMBDA_RTOL = 1e-10
_Z_MAX_ORDER = 6
# half-angle of the square-pulse singularity: |G| must stay clear of pi/2
_AREA_MARGIN = 0.1


@dataclass(frozen=True)
class AlphaConstant:
    """A complex shift constant with a record of which rung produced it."""

    value: complex
    kind: str  # "alpha0" or "alpha_k"
    k: int | None = None

    def __post_init__(self):
        if self.kind not in ("alpha0", "alpha_k"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "alpha_k" and self.k is None:
            raise ValueError("alpha_k requires the rung index k")
        if not (cmath.isfinite(self.value)):
            raise ValueError("shift constant must be finite")


@dataclass(frozen=True)
class LambdaResult:
    """Outcome of the fixed-point solve for the limiting shift lambda."""

    value: complex
    residual: float
    iterations: int
    converged: bool
    trace: tuple = field(default_factory=tuple)


def _traj(p: PulseParams, samples: np.ndarray) -> ComplexTrajectory:
    return ComplexTrajectory(t0=0.0, t1=p.tau, samples=samples)


def f0(p: PulseParams, K: int) -> ComplexTrajectory:
    """Zeroth-order ratio -i * theta(omega_c, t)."""
    th = theta_quadrature(p, p.omega_c, K)
    return _traj(p, -1j * th.samples)


def _alpha0_value(p: PulseParams, K: int) -> complex:
    th = theta_quadrature(p, p.omega_c, K)
    t = th.t
    rate = theta_rate(p, t, p.omega_c)
    return 2j / p.tau * simpson(th.samples * np.conj(rate), th.h)


def alpha0(p: PulseParams, K: int) -> AlphaConstant:
    """Time-averaged shift constant (2i/tau) * int theta * conj(dtheta/dt)."""
    return AlphaConstant(value=complex(_alpha0_value(p, K)), kind="alpha0")


def f1_closed(p: PulseParams, K: int) -> ComplexTrajectory:
    """First-order ratio -(i/2)[theta(omega_c,t) + e^{-i a0 t} theta(omega_c+a0,t)]."""
    a0 = _alpha0_value(p, K)
    th0 = theta_quadrature(p, p.omega_c, K)
    th1 = theta_quadrature(p, p.omega_c + a0, K)
    t = th0.t
    samples = -0.5j * (th0.samples + np.exp(-1j * a0 * t) * th1.samples)
    return _traj(p, samples)


def fk_sequence(p: PulseParams, K: int, k_max: int) -> list[ComplexTrajectory]:
    """Iterated refinements f_1, f_2, ..., f_{k_max} of the shifted closed form.

    Each rung averages the previous trajectory into a new shift constant
    alpha_k and rebuilds the ratio from it; successive differences should
    shrink toward finfinity.  Raises DivergedError after three consecutive
    growths of the update norm, or when the shift constant leaves the
    range where the spectral integral can be evaluated.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    first = f1_closed(p, K)
    out = [first]
    t = first.t
    h = first.h
    rate_conj = np.conj(theta_rate(p, t, p.omega_c))
    prev_norm = np.inf
    growths = 0
    fk = first.samples
    for k in range(1, k_max):
        a_k = -2.0 / p.tau * simpson(rate_conj * fk, h)
        try:
            th_shift = theta_quadrature(p, p.omega_c + a_k, K).samples
        except (GridTooCoarseError, OverflowGuardError) as exc:
            raise DivergedError(
                f"shift constant blew up at rung {k + 1}: |alpha|={abs(a_k):.3e}"
            ) from exc
        fdot = derivative_uniform(fk, h)
        decay = np.exp(-1j * a_k * t)
        conv = decay * cumulative_simpson(fdot / decay, h)
        f_next = 0.5 * (fk - 2j * decay * th_shift - conv)
        step = float(np.linalg.norm(f_next - fk))
        if step > prev_norm:
            growths += 1
            if growths >= 3:
                raise DivergedError(
                    f"refinement diverging at rung {k + 1}: update norm {step:.3e}"
                )
        else:
            growths = 0
        prev_norm = step
        out.append(_traj(p, f_next))
        fk = f_next
    return out


def _default_kernels(p: PulseParams, K: int):
    """Quadrature-backed theta and conjugated-rate evaluators at any shift nu."""

    def theta_fn(nu: complex) -> np.ndarray:
        return theta_quadrature(p, nu, K).samples

    t = np.linspace(0.0, p.tau, K + 1)

    def conj_rate_fn(nu: complex) -> np.ndarray:
        # conj kernel continued to complex nu: Omega cos(w t + phi) e^{-i nu t}
        return theta_rate(p, t, -nu)

    return theta_fn, conj_rate_fn


def solve_lambda(
    p: PulseParams,
    K: int,
    *,
    _theta_fn=None,
    _conj_rate_fn=None,
) -> LambdaResult:
    """Damped fixed-point solve of lambda = (i/tau) int conj-rate * theta dt.

    Both factors in the average are evaluated at the shifted frequency
    omega_c + lambda.  Seeds from the unshifted average (half of alpha0),
    damps updates by 1/2, and stops once |lambda - rhs(lambda)| drops
    below 1e-10 * max(1, |lambda|).  On failure returns the best iterate
    seen with converged=False.
    """
    if _theta_fn is None or _conj_rate_fn is None:
        _theta_fn, _conj_rate_fn = _default_kernels(p, K)
    h = p.tau / K

    def rhs(lam: complex) -> complex:
        nu = p.omega_c + lam
        return 1j / p.tau * simpson(_conj_rate_fn(nu) * _theta_fn(nu), h)

    lam = rhs(0.0)
    trace = [lam]
    best_lam = lam
    best_res = np.inf
    for it in range(1, _LAMBDA_MAX_ITERS + 1):
        val = rhs(lam)
        res = abs(lam - val)
        if res < best_res:
            best_res = res
            best_lam = lam
        if res < _LAMBDA_RTOL * max(1.0, abs(lam)):
            return LambdaResult(
                value=complex(lam),
                residual=float(res),
                iterations=it,
                converged=True,
                trace=tuple(trace),
            )
        lam = (1.0 - _LAMBDA_DAMPING) * lam + _LAMBDA_DAMPING * val
        trace.append(lam)
    return LambdaResult(
        value=complex(best_lam),
        residual=float(best_res),
        iterations=_LAMBDA_MAX_ITERS,
        converged=False,
        trace=tuple(trace),
    )


def finfinity(
    p: PulseParams,
    K: int,
    *,
    lambda_result: LambdaResult | None = None,
    _theta_fn=None,
) -> ComplexTrajectory:
    """Limiting ratio -i e^{-i lambda t} theta(omega_c + lambda, t).

    Solves for lambda unless a converged LambdaResult is supplied.
    """
    if lambda_result is None:
        lambda_result = solve_lambda(p, K, _theta_fn=_theta_fn)
    if not lambda_result.converged:
        raise NotConvergedError(
            f"lambda fixed point stalled at residual {lambda_result.residual:.3e}"
        )
    lam = lambda_result.value
    if _theta_fn is None:
        _theta_fn, _ = _default_kernels(p, K)
    th = _theta_fn(p.omega_c + lam)
    t = np.linspace(0.0, p.tau, K + 1)
    return _traj(p, -1j * np.exp(-1j * lam * t) * th)


def z_series(
    p: PulseParams, K: int, order: int
) -> tuple[list[ComplexTrajectory], ComplexTrajectory]:
    """Power series of f in the transition frequency, resummed at order 0.

    The order-0 term is exact in the omega_c -> 0 limit: z0 = -i tan(G)
    with G the running half-area of the raw field.  Higher terms follow
    from the recursion

        z_n(t) = e^{w} int_0^t e^{-w} [ i g sum_{j=1}^{n-1} z_j z_{n-j}
                                        - i omega_c z_{n-1} ] dt'

    with w = 2i int g z0.  Returns (terms, f) where f is the phase-restored
    partial sum e^{i omega_c t} sum z_n.  Raises NearSingularAreaError when
    G approaches pi/2 (tan blows up) and DivergedError when term norms grow
    for two consecutive orders.
    """
    if not 0 <= order <= _Z_MAX_ORDER:
        raise ValueError(f"order must be in [0, {_Z_MAX_ORDER}]")
    t = np.linspace(0.0, p.tau, K + 1)
    h = p.tau / K
    g = field_at(p, t)
    big_g = cumulative_simpson(g, h)
    peak = float(np.max(np.abs(big_g)))
    if peak > np.pi / 2 - _AREA_MARGIN:
        raise NearSingularAreaError(
            f"running half-area reaches {peak:.4f}, within {_AREA_MARGIN} of pi/2"
        )
    z0 = -1j * np.tan(big_g)
    w = 2j * cumulative_simpson(g * z0, h)
    ew = np.exp(w)
    terms = [z0]
    growths = 0
    for n in range(1, order + 1):
        src = np.zeros_like(z0)
        for j in range(1, n):
            src = src + terms[j] * terms[n - j]
        integrand = (1j * g * src - 1j * p.omega_c * terms[n - 1]) / ew
        z_n = ew * cumulative_simpson(integrand, h)
        if np.linalg.norm(z_n) > np.linalg.norm(terms[-1]):
            growths += 1
            if growths >= 2:
                raise DivergedError(f"series terms growing at order {n}")
        else:
            growths = 0
        terms.append(z_n)
    total = np.exp(1j * p.omega_c * t) * sum(terms)
    return [_traj(p, z) for z in terms], _traj(p, total)
