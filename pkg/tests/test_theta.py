import math

import numpy as np
import pytest

from fewcycle import (
    GridTooCoarseError,
    OverflowGuardError,
    PulseParams,
    Square,
    WrongEnvelopeError,
    erf_complex,
    spectral_area,
    theta_gaussian_closed,
    theta_quadrature,
    theta_rate,
)
from fewcycle.numerics import derivative_uniform
from fewcycle.pulse import Gaussian

# frozen with mpmath.erf at 40 significant digits, one point per
# algorithm region (Maclaurin series, Weideman expansion, continued
# fraction)
ERF_ORACLE = [
    (1.0 + 1.0j, 1.3161512816979476449 + 0.19045346923783468628j),
    (3.0 - 2.0j, 0.99896327885681726888 + 1.1546724379290603406e-05j),
    (9.5 + 0.5j, 1.0 + 0.0j),
]

# frozen with mpmath.quad (Gauss-Legendre, 40 digits) on the benchmark
# pulse: omega=1, omega_c=0.2, omega0=0.1, phi=0, 3 cycles, gaussian
# sigma = tau/8
THETA_BENCH_REAL = 0.017115227481662039828 - 0.05267525385532073123j
THETA_BENCH_SHIFTED = 0.015973015171898654167 - 0.030407100728390756812j


@pytest.mark.parametrize("z,expected", ERF_ORACLE)
def test_erf_complex_oracle_points(z, expected):
    got = erf_complex(np.array([z]))[0]
    assert abs(got - expected) < 1e-13


def test_erf_complex_real_line_matches_math_erf():
    x = np.linspace(-6.0, 6.0, 121)
    got = erf_complex(x.astype(np.complex128))
    expected = np.array([math.erf(v) for v in x])
    assert np.max(np.abs(got - expected)) < 1e-14
    assert np.max(np.abs(got.imag)) < 1e-16


def test_erf_complex_reflection_symmetries():
    rng = np.random.default_rng(42)
    z = rng.uniform(-5, 5, 1000) + 1j * rng.uniform(-5, 5, 1000)
    w = erf_complex(z)
    w_neg = erf_complex(-z)
    w_conj = erf_complex(np.conj(z))
    scale = np.maximum(1.0, np.abs(w))
    assert np.max(np.abs(w_neg + w) / scale) < 1e-13
    assert np.max(np.abs(w_conj - np.conj(w)) / scale) < 1e-13


def test_erf_complex_accurate_at_region_seams():
    # both algorithms meeting at each dispatch radius must agree with a
    # high-precision reference; a naive two-sided difference would mostly
    # measure the function's own steep variation there
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    for radius in (2.5, 9.0):
        for angle in np.linspace(0.01, 1.56, 16):
            for eps in (-1e-9, 1e-9):
                z = (radius + eps) * np.exp(1j * angle)
                got = erf_complex(np.array([z]))[0]
                ref = complex(mp.erf(mp.mpc(z.real, z.imag)))
                assert abs(got - ref) / max(1.0, abs(ref)) < 1e-12


def test_erf_complex_stays_finite_in_saturation_band():
    # strongly imaginary arguments overflow the true value; the
    # implementation must still return finite numbers
    z = np.array([28.0 + 14.0j, 5.0 + 29.0j, 30.0j])
    vals = erf_complex(z)
    assert np.all(np.isfinite(vals.real)) and np.all(np.isfinite(vals.imag))


def test_theta_starts_at_zero(benchmark_pulse):
    th = theta_quadrature(benchmark_pulse, 0.2, 400)
    assert th.samples[0] == 0.0
    assert th.t0 == 0.0 and th.t1 == benchmark_pulse.tau


def test_theta_quadrature_frozen_benchmark(benchmark_pulse):
    th = theta_quadrature(benchmark_pulse, 0.2, 2000)
    assert abs(th.samples[-1] - THETA_BENCH_REAL) < 1e-12


def test_theta_quadrature_frozen_complex_shift(benchmark_pulse):
    th = theta_quadrature(benchmark_pulse, 0.2 + 0.05j, 2000)
    assert abs(th.samples[-1] - THETA_BENCH_SHIFTED) < 1e-12


def test_theta_quadrature_matches_square_pulse_antiderivative():
    # for a flat envelope the integral has an elementary closed form
    p = PulseParams(omega=1.0, omega_c=0.7, omega0=0.25, phi=0.9, cycles=2.0, envelope=Square())
    nu = 0.7 + 0.03j
    th = theta_quadrature(p, nu, 3000)
    t = th.t
    half = p.omega0 / 2.0
    plus = np.expm1(1j * (nu + p.omega) * t) / (1j * (nu + p.omega))
    minus = np.expm1(1j * (nu - p.omega) * t) / (1j * (nu - p.omega))
    exact = half * (np.exp(1j * p.phi) * plus + np.exp(-1j * p.phi) * minus)
    assert np.max(np.abs(th.samples - exact)) < 1e-10


def test_theta_halving_step_converges(benchmark_pulse):
    a = theta_quadrature(benchmark_pulse, 0.2, 1000)
    b = theta_quadrature(benchmark_pulse, 0.2, 2000)
    sup = np.max(np.abs(b.samples))
    assert np.max(np.abs(a.samples[::2] - b.samples[::4])) < 1e-8 * sup


def test_theta_carrier_splits_into_shifted_envelope_transforms():
    # cos carrier decomposes theta into two envelope-only transforms
    p = PulseParams(omega=1.0, omega_c=0.4, omega0=0.2, phi=0.7, cycles=3.0, envelope=Gaussian(0.125))
    K = 2000
    th = theta_quadrature(p, p.omega_c, K)
    up = spectral_area(p, p.omega_c + p.omega, K)
    down = spectral_area(p, p.omega_c - p.omega, K)
    combo = 0.5 * (np.exp(1j * p.phi) * up.samples + np.exp(-1j * p.phi) * down.samples)
    assert np.max(np.abs(th.samples - combo)) < 1e-10


def test_theta_rate_is_derivative_of_theta(benchmark_pulse):
    K = 4000
    nu = 0.2 + 0.01j
    th = theta_quadrature(benchmark_pulse, nu, K)
    rate = theta_rate(benchmark_pulse, th.t, nu)
    fd = derivative_uniform(th.samples, th.h)
    assert np.max(np.abs(fd - rate)) < 1e-6 * np.max(np.abs(rate))


def test_grid_guard_rejects_undersampled_carrier(benchmark_pulse):
    with pytest.raises(GridTooCoarseError):
        theta_quadrature(benchmark_pulse, 40.0, 64)


def test_overflow_guard_rejects_large_imaginary_shift(benchmark_pulse):
    with pytest.raises(OverflowGuardError):
        theta_quadrature(benchmark_pulse, 0.2 + 20.0j, 2000)


def test_gaussian_closed_form_matches_quadrature(benchmark_pulse):
    for nu in (0.2, 0.2 + 0.05j, 1.7 - 0.02j):
        closed = theta_gaussian_closed(benchmark_pulse, nu, 2000)
        quad = theta_quadrature(benchmark_pulse, nu, 2000)
        sup = np.max(np.abs(quad.samples))
        assert np.max(np.abs(closed.samples - quad.samples)) < 1e-8 * sup


def test_gaussian_closed_form_requires_gaussian_envelope():
    p = PulseParams(omega=1.0, omega_c=0.5, omega0=0.1, phi=0.0, cycles=3.0, envelope=Square())
    with pytest.raises(WrongEnvelopeError):
        theta_gaussian_closed(p, 0.5, 500)


def test_trajectory_grid_comparison(benchmark_pulse):
    from fewcycle import GridMismatchError

    a = theta_quadrature(benchmark_pulse, 0.2, 400)
    b = theta_quadrature(benchmark_pulse, 0.2, 800)
    with pytest.raises(GridMismatchError):
        a.require_same_grid(b)
