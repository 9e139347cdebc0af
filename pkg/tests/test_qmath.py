import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qspeed import (
    NonHermitianInput,
    NotPositive,
    eigh,
    hermitize,
    matrix_log,
    schatten_norm,
)

from conftest import PAULI_X, PAULI_Z, random_density, random_hermitian


class TestEigh:
    def test_identity(self):
        spec = eigh(np.eye(2))
        assert np.allclose(spec.eigenvalues, [1.0, 1.0])

    def test_pauli_z(self):
        spec = eigh(PAULI_Z)
        assert np.allclose(spec.eigenvalues, [-1.0, 1.0])

    def test_diagonal(self):
        spec = eigh(np.diag([0.25, 0.75]))
        assert np.allclose(spec.eigenvalues, [0.25, 0.75])

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(NonHermitianInput):
            eigh(np.ones((2, 3)))

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
    def test_reconstruction_and_unitarity(self, seed, dim):
        a = random_hermitian(np.random.default_rng(seed), dim)
        spec = eigh(a)
        assert np.linalg.norm(spec.reconstruct() - hermitize(a)) < 1e-10
        v = spec.eigenvectors
        assert np.linalg.norm(v.conj().T @ v - np.eye(dim)) < 1e-10
        assert np.all(np.diff(spec.eigenvalues) >= -1e-14)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 5))
    def test_deterministic_phases(self, seed, dim):
        a = random_hermitian(np.random.default_rng(seed), dim)
        s1 = eigh(a)
        s2 = eigh(a.copy())
        assert np.array_equal(s1.eigenvectors, s2.eigenvectors)


class TestMatrixLog:
    def test_maximally_mixed(self):
        lg = matrix_log(np.eye(2) / 2)
        assert np.allclose(lg.value, -math.log(2) * np.eye(2))
        assert not lg.clipped

    def test_diagonal(self):
        lg = matrix_log(np.diag([0.75, 0.25]))
        assert np.allclose(lg.value, np.diag([math.log(0.75), math.log(0.25)]))

    def test_pure_state_clips(self):
        lg = matrix_log(np.diag([1.0, 0.0]), clip=1e-15)
        assert lg.clipped
        assert np.allclose(np.sort(np.linalg.eigvalsh(lg.value)), [math.log(1e-15), 0.0])

    def test_rejects_negative(self):
        with pytest.raises(NotPositive):
            matrix_log(np.diag([1.1, -0.1]))

    def test_clip_domain(self):
        with pytest.raises(ValueError):
            matrix_log(np.eye(2) / 2, clip=1e-3)
        with pytest.raises(ValueError):
            matrix_log(np.eye(2) / 2, clip=0.0)

    def test_exp_log_reconstruction(self, rng):
        for dim in (2, 3, 5):
            rho = random_density(rng, dim, full_rank=True)
            clip = 1e-15
            lg = matrix_log(rho, clip)
            w, v = np.linalg.eigh(lg.value)
            back = (v * np.exp(w)) @ v.conj().T
            assert np.linalg.norm(back - rho) < dim * clip * abs(math.log(clip)) + 1e-12


class TestSchattenNorms:
    def test_pauli_x(self):
        assert schatten_norm(PAULI_X, "op") == pytest.approx(1.0)
        assert schatten_norm(PAULI_X, "hs") == pytest.approx(math.sqrt(2))
        assert schatten_norm(PAULI_X, "tr") == pytest.approx(2.0)

    def test_zero(self):
        z = np.zeros((3, 3))
        for kind in ("op", "hs", "tr"):
            assert schatten_norm(z, kind) == 0.0

    def test_diag_3_minus4(self):
        a = np.diag([3.0, -4.0])
        assert schatten_norm(a, "op") == pytest.approx(4.0)
        assert schatten_norm(a, "hs") == pytest.approx(5.0)
        assert schatten_norm(a, "tr") == pytest.approx(7.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            schatten_norm(np.eye(2), "nuclear")

    def test_hs_equals_frobenius(self, rng):
        a = random_hermitian(rng, 4)
        assert schatten_norm(a, "hs") == pytest.approx(np.linalg.norm(a), rel=1e-12)


class TestHermitize:
    def test_fixed_point(self, rng):
        a = random_hermitian(rng, 3)
        assert np.allclose(hermitize(a), a)

    def test_definition(self):
        assert np.allclose(
            hermitize(np.array([[0.0, 1.0], [0.0, 0.0]])),
            np.array([[0.0, 0.5], [0.5, 0.0]]),
        )

    def test_kills_antihermitian_part(self):
        perturbed = np.eye(2, dtype=complex)
        perturbed[0, 1] += 1j * 0.3
        perturbed[1, 0] += 1j * 0.3
        assert np.allclose(hermitize(perturbed), np.eye(2))


class TestNormInequalities:
    def test_cauchy_schwarz_and_hoelder_and_ordering(self, rng):
        for _ in range(300):
            dim = int(rng.integers(1, 7))
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            inner = abs(np.trace(a @ b))
            assert inner <= schatten_norm(a, "hs") * schatten_norm(b, "hs") * (1 + 1e-12)
            assert inner <= schatten_norm(a, "tr") * schatten_norm(b, "op") * (1 + 1e-12)
            assert (
                schatten_norm(a, "op")
                <= schatten_norm(a, "hs") * (1 + 1e-12)
                <= schatten_norm(a, "tr") * (1 + 1e-12) ** 2
            )
