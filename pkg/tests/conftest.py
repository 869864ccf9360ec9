import numpy as np
import pytest

from landaulab import Grid, make_potential


@pytest.fixture(scope="session")
def model():
    return make_potential("model_quadratic")


@pytest.fixture(scope="session")
def trig01():
    return make_potential("quadratic_plus_trig", [0.1])


@pytest.fixture(scope="session")
def bump01():
    return make_potential("quadratic_plus_gaussian_bump", [0.1])


@pytest.fixture(scope="session")
def grid_small():
    return Grid(extent_L=6.0, n_per_side=65)


@pytest.fixture(scope="session")
def grid_medium():
    return Grid(extent_L=6.0, n_per_side=129)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
