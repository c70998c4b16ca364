import numpy as np
import pytest

from nrssh.lattice import ModelParams

# (kappa1/nu, kappa2/nu, lambda) circuit cases and their reference aIPRs at omega0 t = 100
CIRCUIT_CASES = [
    (0.5, 0.5, 2.0, 0.1262),
    (1.0, 0.25, 2.0, 0.2452),
    (2.0, 2.0, 5.0, 0.4194),
    (4.0, 1.0, 5.0, 0.8017),
]


def e1(dim):
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    return v


@pytest.fixture
def chain_41():
    return ModelParams(1.0, 4.0, 1.0, 20)


@pytest.fixture
def chain_22():
    return ModelParams(1.0, 2.0, 2.0, 20)
