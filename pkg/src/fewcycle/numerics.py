"""Quadrature and differentiation primitives on uniform grids.

Everything here assumes equally spaced samples. The quadrature rule is
composite Simpson evaluated as a running prefix, so a single O(n) pass
yields the integral up to every grid point, odd indices included.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "cumulative_simpson",
    "simpson",
    "derivative_uniform",
    "trapezoid_weights",
]


def cumulative_simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Prefix integrals of sampled data by composite Simpson.

    Returns an array ``out`` of the same length with ``out[j]`` the
    integral from the first sample to sample ``j``. Even prefixes use
    full Simpson panels; odd prefixes add the half-panel rule
    h/12*(5*y0 + 8*y1 - y2) from the parabola through the local triplet,
    so every prefix is 4th-order accurate. A lone trailing interval is
    closed with the mirrored half-panel rule.
    """
    y = np.asarray(y)
    n = y.shape[0]
    out = np.zeros(n, dtype=np.result_type(y.dtype, np.float64))
    if n < 2:
        return out
    if n == 2:
        out[1] = 0.5 * h * (y[0] + y[1])
        return out

    pairs = (n - 1) // 2
    base = 2 * np.arange(pairs)
    panel = (h / 3.0) * (y[base] + 4.0 * y[base + 1] + y[base + 2])
    out[2::2][:pairs] = np.cumsum(panel)
    out[1::2][:pairs] = out[0:-1:2][:pairs] + (h / 12.0) * (
        5.0 * y[base] + 8.0 * y[base + 1] - y[base + 2]
    )
    if (n - 1) % 2 == 1:
        out[-1] = out[-2] + (h / 12.0) * (-y[-3] + 8.0 * y[-2] + 5.0 * y[-1])
    return out


def simpson(y: np.ndarray, h: float):
    """Definite integral over the full sample range.

    Defined as the last prefix of :func:`cumulative_simpson` so the two
    can never disagree.
    """
    return cumulative_simpson(y, h)[-1]


def derivative_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """4th-order finite-difference derivative of uniformly sampled data.

    Central 5-point stencil inside, one-sided 5-point stencils of the
    same order at the two samples on each edge. Needs at least 5 samples.
    """
    y = np.asarray(y)
    n = y.shape[0]
    if n < 5:
        raise ValueError("derivative_uniform needs at least 5 samples")
    d = np.empty(n, dtype=np.result_type(y.dtype, np.float64))
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h)
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h)
    d[-2] = (3.0 * y[-1] + 10.0 * y[-2] - 18.0 * y[-3] + 6.0 * y[-4] - y[-5]) / (12.0 * h)
    d[-1] = (25.0 * y[-1] - 48.0 * y[-2] + 36.0 * y[-3] - 16.0 * y[-4] + 3.0 * y[-5]) / (12.0 * h)
    return d


def trapezoid_weights(n: int, h: float) -> np.ndarray:
    """Trapezoid quadrature weights for n uniform samples."""
    if n < 2:
        raise ValueError("trapezoid_weights needs at least 2 samples")
    w = np.full(n, h, dtype=np.float64)
    w[0] = 0.5 * h
    w[-1] = 0.5 * h
    return w
