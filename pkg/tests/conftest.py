import numpy as np
import pytest

from paramybe.algebra import (
    almost_trivial_brace,
    cyclic_group,
    dihedral_group,
    modular_brace,
    param_set,
    trivial_brace,
)
from paramybe.reflections import brace_reflection
from paramybe.shelves import conjugate_p_rack, core_p_rack, trivial_p_rack
from paramybe.solutions import p_shelf_solution
from paramybe.twists import brace_sigma, twisted_solution


@pytest.fixture(scope="session")
def mod8():
    return modular_brace(3)


@pytest.fixture(scope="session")
def mod8_Y(mod8):
    return param_set(mod8, range(4), "inverse")


@pytest.fixture(scope="session")
def mod8_sigma(mod8, mod8_Y):
    return brace_sigma(mod8, mod8_Y)


@pytest.fixture(scope="session")
def mod8_solution(mod8_Y, mod8_sigma):
    return twisted_solution(trivial_p_rack(mod8_Y), mod8_sigma)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def z4_brace(z4):
    return trivial_brace(z4)


@pytest.fixture(scope="session")
def z4_Y(z4_brace):
    return param_set(z4_brace, [0, 2], "inverse")


@pytest.fixture(scope="session")
def z4_core(z4_brace, z4_Y):
    return core_p_rack(z4_brace, z4_Y)


@pytest.fixture(scope="session")
def z4_core_solution(z4_core):
    return p_shelf_solution(z4_core)


@pytest.fixture(scope="session")
def z4_core_K(z4_brace, z4_Y):
    return brace_reflection(z4_brace, z4_Y, 2, 1)


@pytest.fixture(scope="session")
def d4_brace():
    return almost_trivial_brace(dihedral_group(4))


@pytest.fixture(scope="session")
def d4_Y(d4_brace):
    from paramybe.algebra import additive_center

    return param_set(d4_brace, list(additive_center(d4_brace)), "inverse")


@pytest.fixture(scope="session")
def mod8_conj(mod8, mod8_Y):
    return conjugate_p_rack(mod8, mod8_Y)


def mutate(table: np.ndarray, rng: np.random.Generator, n: int) -> np.ndarray:
    """Copy of ``table`` with one entry replaced by a different value in range."""
    out = np.array(table)
    idx = tuple(int(rng.integers(s)) for s in out.shape)
    out[idx] = (out[idx] + 1 + int(rng.integers(n - 1))) % n
    return out
