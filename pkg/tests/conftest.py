import numpy as np
import pytest

from qskyrmion import (
    GridSpec,
    HybridStateSpec,
    apply_isotropic_noise,
    coeff_field,
    pure_state,
)


@pytest.fixture(scope="session")
def bell_spec():
    return HybridStateSpec(0, 1, 0.0)


@pytest.fixture(scope="session")
def bell_rho(bell_spec):
    return pure_state(bell_spec)


@pytest.fixture(scope="session")
def small_grid():
    # odd sample count puts a grid point exactly at the origin
    return GridSpec(half_width=8.0, samples_per_axis=65)


@pytest.fixture(scope="session")
def bell_coeffs(bell_spec, small_grid):
    return coeff_field(bell_spec, small_grid)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def channel(spec, p):
    return apply_isotropic_noise(pure_state(spec), p)
