import numpy as np
import pytest

from holostark import default_basis, material_lookup, spin_matrices


@pytest.fixture(scope="session")
def spin():
    return spin_matrices()


@pytest.fixture(scope="session")
def basis():
    return default_basis()


@pytest.fixture(scope="session")
def ge_b():
    return material_lookup("Ge", "B")


@pytest.fixture(scope="session")
def si_b():
    return material_lookup("Si", "B")


@pytest.fixture(scope="session")
def ge_spherical(ge_b):
    return ge_b.spherical()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
