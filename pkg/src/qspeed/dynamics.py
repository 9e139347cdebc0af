"""GKSL generators, the Liouvillian superoperator, and fixed-step RK4
integration of the master equation into trajectories."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .qmath import DEFAULT_CLIP, hermitize, hermiticity_defect, schatten_norm


class DimensionMismatch(ValueError):
    """Operator dimensions do not agree."""


class PositivityLost(RuntimeError):
    """Integration produced a state with a significantly negative eigenvalue."""


def check_density(
    rho: np.ndarray,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-10,
    psd_tol: float = 1e-9,
) -> np.ndarray:
    """Validate a density matrix (Hermitian, unit trace, PSD) and return it
    as a complex ndarray."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"state must be square, got shape {rho.shape}")
    if hermiticity_defect(rho) > herm_tol:
        raise ValueError(f"state not Hermitian within {herm_tol:.1e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"state trace {tr} deviates from 1 beyond {trace_tol:.1e}")
    wmin = float(np.linalg.eigvalsh(hermitize(rho)).min())
    if wmin < -psd_tol:
        raise ValueError(f"state has eigenvalue {wmin:.3e} below -{psd_tol:.1e}")
    return rho


Modulation = Callable[[float], float]


@dataclass(frozen=True)
class Jump:
    """One dissipator term: rate * (J rho J† - 1/2 {J†J, rho}).

    `modulation`, when given, scales the rate by a function of time.
    """

    matrix: np.ndarray
    rate: float
    modulation: Optional[Modulation] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"jump operator must be square, got {m.shape}")
        if self.rate < 0:
            raise ValueError(f"jump rate must be nonnegative, got {self.rate}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_jdagj", m.conj().T @ m)


@dataclass(frozen=True)
class Lindbladian:
    """Hamiltonian plus weighted jump operators defining the generator L_t."""

    hamiltonian: np.ndarray
    jumps: tuple[Jump, ...] = ()
    h_modulation: Optional[Modulation] = None

    def __post_init__(self):
        h = np.asarray(self.hamiltonian, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise DimensionMismatch(f"Hamiltonian must be square, got {h.shape}")
        if hermiticity_defect(h) > 1e-10:
            raise ValueError("Hamiltonian must be Hermitian")
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "jumps", tuple(self.jumps))
        for j in self.jumps:
            if j.matrix.shape != h.shape:
                raise DimensionMismatch(
                    f"jump shape {j.matrix.shape} != Hamiltonian shape {h.shape}"
                )

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def lindblad_apply(lind: Lindbladian, rho: np.ndarray, t: float = 0.0) -> np.ndarray:
    """Apply the GKSL generator: -i[H, rho] + sum_k r_k (J rho J† - 1/2 {J†J, rho})."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != lind.hamiltonian.shape:
        raise DimensionMismatch(
            f"state shape {rho.shape} != generator dimension {lind.dim}"
        )
    hscale = lind.h_modulation(t) if lind.h_modulation is not None else 1.0
    h = lind.hamiltonian
    out = -1j * hscale * (h @ rho - rho @ h)
    for j in lind.jumps:
        r = j.rate * (j.modulation(t) if j.modulation is not None else 1.0)
        if r == 0.0:
            continue
        jd = j._jdagj
        out += r * (j.matrix @ rho @ j.matrix.conj().T - 0.5 * (jd @ rho + rho @ jd))
    return out


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution of rho' = L_t(rho): times t_0=0..t_M=T,
    states rho_k, and the Liouville action L_{t_k}(rho_k) at every node."""

    times: np.ndarray
    states: np.ndarray
    liouville_action: np.ndarray
    clip: float = DEFAULT_CLIP
    max_trace_drift: float = 0.0

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def steps(self) -> int:
        return self.times.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.states.shape[1]


def evolve(
    lind: Lindbladian,
    rho0: np.ndarray,
    T: float,
    steps: int,
    clip: float = DEFAULT_CLIP,
) -> Trajectory:
    """Integrate the master equation with classical fixed-step RK4.

    After every step the state is hermitized and its trace renormalized to
    one; the pre-renormalization drift is tracked and must stay small.
    The final state must be PSD within -1e-7 or PositivityLost is raised.
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    if steps < 16:
        raise ValueError(f"steps must be at least 16, got {steps}")
    rho = check_density(rho0)
    if rho.shape != lind.hamiltonian.shape:
        raise DimensionMismatch(
            f"state shape {rho.shape} != generator dimension {lind.dim}"
        )
    h = T / steps
    times = np.linspace(0.0, T, steps + 1)
    states = np.empty((steps + 1,) + rho.shape, dtype=complex)
    action = np.empty_like(states)
    drift = 0.0
    states[0] = rho
    action[0] = lindblad_apply(lind, rho, 0.0)
    for k in range(steps):
        t = times[k]
        k1 = action[k]
        k2 = lindblad_apply(lind, rho + 0.5 * h * k1, t + 0.5 * h)
        k3 = lindblad_apply(lind, rho + 0.5 * h * k2, t + 0.5 * h)
        k4 = lindblad_apply(lind, rho + h * k3, t + h)
        rho = hermitize(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        tr = float(np.trace(rho).real)
        drift = max(drift, abs(tr - 1.0))
        rho = rho / tr
        states[k + 1] = rho
        action[k + 1] = lindblad_apply(lind, rho, times[k + 1])
    wmin = float(np.linalg.eigvalsh(states[-1]).min())
    if wmin < -1e-7:
        raise PositivityLost(
            f"final state eigenvalue {wmin:.3e} below -1e-7; "
            "integration diverged or step too coarse"
        )
    return Trajectory(
        times=times,
        states=states,
        liouville_action=action,
        clip=clip,
        max_trace_drift=drift,
    )


def is_fixed_point(lind: Lindbladian, rho: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff ||L(rho)||_HS at t=0 does not exceed tol."""
    return schatten_norm(hermitize(lindblad_apply(lind, rho, 0.0)), "hs") <= tol


# ---------------------------------------------------------------------------
# JSON wire format:
# {"dim": d, "hamiltonian": [[[re, im], ...], ...],
#  "jumps": [{"matrix": [[[re, im], ...], ...], "rate": r}, ...]}
# ---------------------------------------------------------------------------


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, complex)]


def _matrix_from_json(data: Sequence) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)


def lindbladian_to_dict(lind: Lindbladian) -> dict:
    return {
        "dim": lind.dim,
        "hamiltonian": _matrix_to_json(lind.hamiltonian),
        "jumps": [
            {"matrix": _matrix_to_json(j.matrix), "rate": float(j.rate)}
            for j in lind.jumps
        ],
    }


def lindbladian_from_dict(data: dict) -> Lindbladian:
    dim = int(data["dim"])
    h = _matrix_from_json(data["hamiltonian"])
    if h.shape != (dim, dim):
        raise DimensionMismatch(f"hamiltonian shape {h.shape} != declared dim {dim}")
    jumps = []
    for item in data.get("jumps", []):
        m = _matrix_from_json(item["matrix"])
        if m.shape != (dim, dim):
            raise DimensionMismatch(f"jump shape {m.shape} != declared dim {dim}")
        jumps.append(Jump(matrix=m, rate=float(item["rate"])))
    return Lindbladian(hamiltonian=h, jumps=tuple(jumps))


def load_lindbladian(path) -> Lindbladian:
    with open(path) as f:
        return lindbladian_from_dict(json.load(f))


def save_lindbladian(lind: Lindbladian, path) -> None:
    with open(path, "w") as f:
        json.dump(lindbladian_to_dict(lind), f, indent=2)
