import numpy as np
import pytest

from cluster_decay.gate_fidelity import builtin_specs


@pytest.fixture(scope="session")
def specs():
    return builtin_specs()


@pytest.fixture()
def rng():
    return np.random.default_rng(20260809)


def random_density_matrix(rng, dim: int) -> np.ndarray:
    """Ginibre-ensemble density matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
