import pytest

from fewcycle import Gaussian, PulseParams


@pytest.fixture
def benchmark_pulse():
    """Reference pulse used throughout: weak drive, far-below-resonance."""
    return PulseParams(
        omega=1.0,
        omega_c=0.2,
        omega0=0.1,
        phi=0.0,
        cycles=3.0,
        envelope=Gaussian(sigma_factor=0.125),
    )
