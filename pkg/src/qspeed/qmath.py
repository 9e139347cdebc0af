"""Dense Hermitian linear algebra: eigendecomposition with deterministic
phases, clipped matrix logarithm, and the Schatten norms (op, HS, trace).

Everything here is pure and operates on plain complex ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Eigenvalues of a state below this floor are treated as zero by the
# matrix logarithm.  Trajectories through pure states hit the log
# singularity; the floor keeps integrals finite and every clipped
# evaluation is flagged so downstream reports can mark themselves
# as regularized.
DEFAULT_CLIP = 1e-15

HERMITICITY_TOL = 1e-8


class NonHermitianInput(ValueError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


class NotPositive(ValueError):
    """Matrix expected to be positive semi-definite is not."""


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (A + A†)/2."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return 0.5 * (a + a.conj().T)


def hermiticity_defect(a: np.ndarray) -> float:
    """Max-abs deviation of A from its Hermitian part."""
    a = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors are the columns of a
    unitary matrix, each with its largest-magnitude component made real
    and positive so repeated runs produce identical decompositions.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eigh(a: np.ndarray, tol: float = HERMITICITY_TOL) -> Spectrum:
    """Eigendecomposition with deterministic eigenvector phases.

    Raises NonHermitianInput when the symmetry violation exceeds `tol`.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonHermitianInput(f"expected a square matrix, got shape {a.shape}")
    if hermiticity_defect(a) > tol:
        raise NonHermitianInput(
            f"Hermiticity violation {hermiticity_defect(a):.3e} exceeds {tol:.1e}"
        )
    w, v = np.linalg.eigh(hermitize(a))
    v = np.array(v)
    anchors = np.argmax(np.abs(v), axis=0)
    for k in range(v.shape[1]):
        z = v[anchors[k], k]
        if abs(z) > 0.0:
            v[:, k] *= z.conjugate() / abs(z)
    return Spectrum(eigenvalues=w, eigenvectors=v)


class MatrixLog(NamedTuple):
    value: np.ndarray
    clipped: bool


def matrix_log(rho: np.ndarray, clip: float = DEFAULT_CLIP) -> MatrixLog:
    """ln(rho) for a PSD Hermitian matrix, with eigenvalue floor `clip`.

    Returns the Hermitian matrix V diag(ln max(lam_i, clip)) V† and a flag
    telling whether any eigenvalue was below the floor.
    """
    if not (0.0 < clip <= 1e-6):
        raise ValueError(f"clip must lie in (0, 1e-6], got {clip}")
    spec = eigh(rho)
    if spec.eigenvalues.min() < -1e-8:
        raise NotPositive(
            f"minimum eigenvalue {spec.eigenvalues.min():.3e} below -1e-8"
        )
    clipped = bool(np.any(spec.eigenvalues < clip))
    lam = np.maximum(spec.eigenvalues, clip)
    v = spec.eigenvectors
    return MatrixLog(hermitize((v * np.log(lam)) @ v.conj().T), clipped)


def schatten_norm(a: np.ndarray, kind: str) -> float:
    """Schatten norm of a Hermitian matrix from its eigenvalues.

    kind: 'op' -> max |lam|, 'hs' -> sqrt(sum lam^2), 'tr' -> sum |lam|.
    """
    w = eigh(a).eigenvalues
    if kind == "op":
        return float(np.max(np.abs(w)))
    if kind == "hs":
        return float(np.sqrt(np.sum(w * w)))
    if kind == "tr":
        return float(np.sum(np.abs(w)))
    raise ValueError(f"unknown norm kind {kind!r}; expected 'op', 'hs', or 'tr'")
