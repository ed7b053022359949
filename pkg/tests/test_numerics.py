import numpy as np
import pytest

from fewcycle.numerics import (
    cumulative_simpson,
    derivative_uniform,
    simpson,
    trapezoid_weights,
)


def test_cumulative_simpson_exact_on_quadratic_everywhere():
    # full panels and half panels both integrate parabolas exactly
    t = np.linspace(0.0, 2.0, 11)
    h = t[1] - t[0]
    y = 3 * t**2 - 2 * t + 0.5
    exact = t**3 - t**2 + 0.5 * t
    out = cumulative_simpson(y, h)
    assert out[0] == 0.0
    assert np.max(np.abs(out - exact)) < 1e-13


def test_cumulative_simpson_exact_on_cubic_at_panel_ends():
    # cubic exactness holds where full Simpson panels close
    t = np.linspace(0.0, 2.0, 11)
    h = t[1] - t[0]
    y = t**3 - 2 * t**2 + 0.5
    exact = t**4 / 4 - 2 * t**3 / 3 + 0.5 * t
    out = cumulative_simpson(y, h)
    assert np.max(np.abs(out[::2] - exact[::2])) < 1e-13


def test_cumulative_simpson_even_sample_count():
    # even n leaves a trailing half panel, still exact on parabolas
    t = np.linspace(0.0, 1.0, 10)
    h = t[1] - t[0]
    y = t**2
    out = cumulative_simpson(y, h)
    assert abs(out[-1] - 1.0 / 3.0) < 1e-14


def test_cumulative_simpson_two_points_is_trapezoid():
    out = cumulative_simpson(np.array([1.0, 3.0]), 0.5)
    assert out[0] == 0.0
    assert abs(out[1] - 1.0) < 1e-15


def test_cumulative_simpson_fourth_order_convergence():
    def run(n):
        t = np.linspace(0.0, np.pi, n + 1)
        y = np.sin(t)
        return abs(cumulative_simpson(y, t[1] - t[0])[-1] - 2.0)

    e1, e2 = run(64), run(128)
    order = np.log2(e1 / e2)
    assert order > 3.8


def test_cumulative_simpson_complex_values():
    t = np.linspace(0.0, 1.0, 201)
    h = t[1] - t[0]
    y = np.exp(2j * t)
    exact = (np.exp(2j * t) - 1.0) / 2j
    assert np.max(np.abs(cumulative_simpson(y, h) - exact)) < 1e-9


def test_simpson_matches_cumulative_tail():
    rng = np.random.default_rng(7)
    y = rng.standard_normal(51) + 1j * rng.standard_normal(51)
    h = 0.01
    assert simpson(y, h) == cumulative_simpson(y, h)[-1]


def test_derivative_uniform_exact_on_quartic():
    # the five-point stencils differentiate degree-4 polynomials exactly
    t = np.linspace(-1.0, 1.0, 21)
    h = t[1] - t[0]
    y = t**4 - 3 * t**2 + t
    dy = 4 * t**3 - 6 * t + 1
    assert np.max(np.abs(derivative_uniform(y, h) - dy)) < 1e-11


def test_derivative_uniform_fourth_order_convergence():
    def run(n):
        t = np.linspace(0.0, 2 * np.pi, n + 1)
        d = derivative_uniform(np.sin(t), t[1] - t[0])
        return np.max(np.abs(d - np.cos(t)))

    e1, e2 = run(100), run(200)
    assert np.log2(e1 / e2) > 3.7


def test_derivative_uniform_needs_five_samples():
    with pytest.raises(ValueError):
        derivative_uniform(np.zeros(4), 0.1)


def test_trapezoid_weights_sum_to_span():
    w = trapezoid_weights(11, 0.3)
    assert abs(np.sum(w) - 3.0) < 1e-14
    assert w[0] == w[-1] == 0.15
    assert np.all(w[1:-1] == 0.3)
