import numpy as np
import pytest

from multinorm import FiniteMeasureSpace, VectorTuple


@pytest.fixture
def w3_space():
    return FiniteMeasureSpace(("a", "b", "c"), np.array([1.0, 0.5, 2.0]))


@pytest.fixture
def t1(w3_space):
    # base exponent 1; lattice = max = std:1 = 4.0, weak-2-summing = sqrt(18.25)
    return VectorTuple.from_array(
        w3_space, 1, np.array([[1.0, 2.0, -1.0], [0.0, 1.0, 1.0]])
    )


def random_space(rng, m, weighted=True):
    w = rng.uniform(0.5, 2.0, m) if weighted else np.ones(m)
    return FiniteMeasureSpace(tuple(f"t{i}" for i in range(m)), w)
