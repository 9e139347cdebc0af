"""Information functionals of a state and their exact instantaneous rates:
von Neumann entropy, maximal information, dephasing in a reference basis,
relative entropy of coherence.  All entropies are in nats."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import DimensionMismatch, Lindbladian, lindblad_apply
from .qmath import DEFAULT_CLIP, NotPositive, eigh, hermitize, matrix_log


@dataclass(frozen=True)
class ReferenceBasis:
    """Fixed orthonormal basis (columns) used to define dephasing and
    coherence.  Default everywhere is the computational basis."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(f"basis must be a square matrix, got {v.shape}")
        gram = v.conj().T @ v
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > 1e-10:
            raise ValueError("basis columns are not orthonormal within 1e-10")
        object.__setattr__(self, "vectors", v)
        object.__setattr__(
            self, "_is_computational", bool(np.allclose(v, np.eye(v.shape[0])))
        )

    @classmethod
    def computational(cls, dim: int) -> "ReferenceBasis":
        return cls(np.eye(dim, dtype=complex))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def _resolve_basis(basis: Optional[ReferenceBasis], dim: int) -> ReferenceBasis:
    if basis is None:
        return ReferenceBasis.computational(dim)
    if basis.dim != dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {dim}")
    return basis


def entropy(rho: np.ndarray, clip: float = DEFAULT_CLIP) -> float:
    """von Neumann entropy -sum lam ln lam with the 0 ln 0 = 0 convention;
    eigenvalues below `clip` contribute nothing."""
    w = eigh(rho).eigenvalues
    if w.min() < -1e-8:
        raise NotPositive(f"state eigenvalue {w.min():.3e} below -1e-8")
    w = w[w >= clip]
    return float(-np.sum(w * np.log(w)))


def max_information(rho: np.ndarray, clip: float = DEFAULT_CLIP) -> float:
    """Maximal extractable information ln(d) - S(rho)."""
    d = np.asarray(rho).shape[0]
    return float(np.log(d)) - entropy(rho, clip)


def dephase(rho: np.ndarray, basis: Optional[ReferenceBasis] = None) -> np.ndarray:
    """Kill all off-diagonal elements of rho in the reference basis."""
    rho = np.asarray(rho, dtype=complex)
    b = _resolve_basis(basis, rho.shape[0])
    if b._is_computational:
        return np.diag(np.diag(rho).real.astype(complex))
    u = b.vectors
    pops = np.diag(u.conj().T @ rho @ u).real
    return hermitize((u * pops) @ u.conj().T)


def dephase_matrix(a: np.ndarray, basis: Optional[ReferenceBasis] = None) -> np.ndarray:
    """Basis-diagonal of an arbitrary square matrix.

    Applied to the Liouville action this realizes
    L_t(rho^D) = sum_i <i|L_t(rho)|i> |i><i|, so the dephased trajectory
    never needs its own integration.
    """
    a = np.asarray(a, dtype=complex)
    b = _resolve_basis(basis, a.shape[0])
    if b._is_computational:
        return np.diag(np.diag(a))
    u = b.vectors
    diag = np.diag(u.conj().T @ a @ u)
    return (u * diag) @ u.conj().T


def coherence(
    rho: np.ndarray,
    basis: Optional[ReferenceBasis] = None,
    clip: float = DEFAULT_CLIP,
) -> float:
    """Relative entropy of coherence S(rho^D) - S(rho)."""
    c = entropy(dephase(rho, basis), clip) - entropy(rho, clip)
    # Exact value is nonnegative; roundoff may leave a tiny negative residue.
    return c if c > 0.0 else 0.0


def entropy_rate(
    lind: Lindbladian,
    rho: np.ndarray,
    t: float = 0.0,
    clip: float = DEFAULT_CLIP,
) -> float:
    """Exact instantaneous dS/dt = -tr{L_t(rho) ln rho}."""
    lrho = lindblad_apply(lind, rho, t)
    lg = matrix_log(rho, clip)
    val = -complex(np.trace(lrho @ lg.value))
    return float(val.real)


def coherence_rate(
    lind: Lindbladian,
    rho: np.ndarray,
    basis: Optional[ReferenceBasis] = None,
    t: float = 0.0,
    clip: float = DEFAULT_CLIP,
) -> float:
    """Exact dC/dt = -tr{L_t(rho^D) ln rho^D} + tr{L_t(rho) ln rho}.

    L_t(rho^D) is computed as the basis-diagonal of L_t(rho).
    """
    rho = np.asarray(rho, dtype=complex)
    b = _resolve_basis(basis, rho.shape[0])
    lrho = lindblad_apply(lind, rho, t)
    lrho_d = dephase_matrix(lrho, b)
    log_d = matrix_log(dephase(rho, b), clip)
    log_full = matrix_log(rho, clip)
    val = -complex(np.trace(lrho_d @ log_d.value)) + complex(
        np.trace(lrho @ log_full.value)
    )
    return float(val.real)
