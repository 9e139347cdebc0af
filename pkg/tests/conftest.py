import numpy as np
import pytest

from qspeed import Jump, Lindbladian

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def random_density(rng, dim, full_rank=True):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    if full_rank:
        rho = 0.8 * rho + 0.2 * np.eye(dim) / dim
    return rho


def random_lindbladian(rng, dim, n_jumps=2):
    h = random_hermitian(rng, dim)
    jumps = []
    for _ in range(rng.integers(1, n_jumps + 1)):
        j = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(dim)
        jumps.append(Jump(j, float(rng.uniform(0.2, 1.0))))
    return Lindbladian(hamiltonian=h, jumps=tuple(jumps))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
