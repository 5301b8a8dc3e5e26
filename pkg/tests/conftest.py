import numpy as np
import pytest

from mismatch_cnot.network import coincidence_cnot_network


@pytest.fixture(scope="session")
def cnot():
    return coincidence_cnot_network()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
