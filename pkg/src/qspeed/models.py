"""Closed-form two-level models used as independent oracles: a thermalizing
atom coupled to a photon bath, pure dephasing, and amplitude dissipation.

Each model provides the exact state rho_t, the named scalar quantities that
feed the speed-limit bounds (information, coherence, squared norms), and a
GKSL generator whose integrated trajectory reproduces the closed form.
The formulas are implemented directly from their analytic expressions,
independently of the generic eigendecomposition pipeline, so that a
disagreement localizes a bug to one side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Jump, Lindbladian

MODEL_NAMES = ("thermalization", "dephasing", "dissipative")

SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |1><0|
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |0><1|
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class InvalidParams(ValueError):
    """Model parameters are inconsistent or out of range."""


@dataclass(frozen=True)
class ModelParams:
    """Parameters of a built-in analytic model.

    gamma0: spontaneous emission rate of the bath (thermalization only)
    N: mean photon number of the resonant bath (thermalization only)
    gamma: total emission / dephasing / dissipation rate
    theta: initial Bloch angle of the pure state cos(t/2)|0> + sin(t/2)|1>
    """

    model: str
    gamma: float
    theta: float
    gamma0: float = 0.0
    N: float = 0.0

    def __post_init__(self):
        if self.model not in MODEL_NAMES:
            raise InvalidParams(f"unknown model {self.model!r}; expected one of {MODEL_NAMES}")
        if not (0.0 <= self.theta <= math.pi):
            raise InvalidParams(f"theta must lie in [0, pi], got {self.theta}")
        if self.gamma <= 0:
            raise InvalidParams(f"gamma must be positive, got {self.gamma}")
        if self.model == "thermalization":
            if self.gamma0 < 0 or self.N < 0:
                raise InvalidParams("gamma0 and N must be nonnegative")
            if abs(self.gamma - self.gamma0 * (2.0 * self.N + 1.0)) > 1e-9:
                raise InvalidParams(
                    "thermalization requires gamma = gamma0*(2N+1); "
                    f"got gamma={self.gamma}, gamma0*(2N+1)={self.gamma0 * (2 * self.N + 1)}"
                )


def thermalization_params(gamma0: float, N: float, theta: float) -> ModelParams:
    """Convenience constructor filling in gamma = gamma0*(2N+1)."""
    return ModelParams(
        model="thermalization",
        gamma=gamma0 * (2.0 * N + 1.0),
        theta=theta,
        gamma0=gamma0,
        N=N,
    )


def initial_state(theta: float) -> np.ndarray:
    """Pure state cos(theta/2)|0> + sin(theta/2)|1> as a density matrix."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    psi = np.array([c, s], dtype=complex)
    return np.outer(psi, psi.conj())


def _bloch_state(p0: float, coh: float) -> np.ndarray:
    return np.array([[p0, coh], [coh, 1.0 - p0]], dtype=complex)


def analytic_state(p: ModelParams, t: float) -> np.ndarray:
    """Exact 2x2 state of the model at time t."""
    if t < 0:
        raise InvalidParams(f"t must be nonnegative, got {t}")
    th = p.theta
    c2 = math.cos(th / 2.0) ** 2
    if p.model == "thermalization":
        g, g0 = p.gamma, p.gamma0
        e = math.exp(-g * t)
        p0 = 0.5 * (1.0 - g0 / g + e * (g0 / g + math.cos(th)))
        coh = 0.5 * e * math.sin(th)
        return _bloch_state(p0, coh)
    if p.model == "dephasing":
        coh = math.exp(-p.gamma * t) * math.sin(th / 2.0) * math.cos(th / 2.0)
        return _bloch_state(c2, coh)
    # dissipative
    p0 = math.exp(-p.gamma * t / 2.0) * c2
    coh = math.exp(-p.gamma * t / 4.0) * math.sin(th / 2.0) * math.cos(th / 2.0)
    return _bloch_state(p0, coh)


def thermalization_state(p: ModelParams, t: float) -> np.ndarray:
    if p.model != "thermalization":
        raise InvalidParams("thermalization_state needs thermalization params")
    return analytic_state(p, t)


def _binary_entropy(x: float) -> float:
    out = 0.0
    for q in (x, 1.0 - x):
        if q > 0.0:
            out -= q * math.log(q)
    return out


def _log_sq(x: float) -> float:
    """ln(x)^2 with the divergent x<=0 boundary mapped to +inf."""
    if x <= 0.0:
        return math.inf
    return math.log(x) ** 2


def _thermalization_quantities(p: ModelParams, t: float) -> dict:
    g, g0, th = p.gamma, p.gamma0, p.theta
    e = math.exp(-g * t)
    # exp(-2 g t) * delta, with delta = g^2 + g0^2 (1 - 2e^{gt} + e^{2gt})
    # + 2 g g0 (1 - e^{gt}) cos(th); the scaled form avoids overflow.
    delta_scaled = (
        e * e * g * g
        + g0 * g0 * (e * e - 2.0 * e + 1.0)
        + 2.0 * g * g0 * (e * e - e) * math.cos(th)
    )
    delta_scaled = max(delta_scaled, 0.0)
    r = math.sqrt(delta_scaled) / g  # = e^{-gt} sqrt(delta) / g
    lam_minus, lam_plus = 0.5 * (1.0 - r), 0.5 * (1.0 + r)
    info = math.log(2.0)
    for lam in (lam_minus, lam_plus):
        if lam > 0.0:
            info += lam * math.log(lam)
    n21 = 2.0 * p.N + 1.0
    lrho_tr = (
        0.5
        * g0
        * e
        * math.sqrt(
            n21 * n21 * math.sin(th) ** 2
            + 4.0 * (g0 + g * n21 * math.cos(th) + 2.0 * g0 * p.N) ** 2 / (g * g)
        )
    )
    if lam_minus <= 0.0:
        lnrho_op = math.inf
    else:
        lnrho_op = max(abs(math.log(lam_minus)), abs(math.log(lam_plus)))
    try:
        egt = math.exp(g * t)
        delta = (
            g * g
            + g0 * g0 * (1.0 - 2.0 * egt + egt * egt)
            + 2.0 * g * g0 * (1.0 - egt) * math.cos(th)
        )
    except OverflowError:
        delta = math.inf
    return {
        "info": info,
        "lrho_tr": lrho_tr,
        "lnrho_op": lnrho_op,
        "delta": delta,
        "delta_scaled": delta_scaled,
    }


def _dephasing_quantities(p: ModelParams, t: float) -> dict:
    g, th = p.gamma, p.theta
    e = math.exp(-g * t)
    # r = e^{-gt} sqrt(sin^2 th + e^{2gt} cos^2 th), the Bloch radius.
    r = math.sqrt(math.cos(th) ** 2 + e * e * math.sin(th) ** 2)
    if r >= 1.0 - 1e-14:
        dc_abs = 0.0
    else:
        dc_abs = abs(
            0.5
            * (
                math.log(r + 1.0)
                + math.log(0.25 - 0.25 * r)
                + 2.0 * r * math.atanh(r)  # = 2 r arccoth(1/r)
            )
        )
    s2, c2 = math.sin(th / 2.0) ** 2, math.cos(th / 2.0) ** 2
    return {
        "dC_abs": dc_abs,
        "lrho_hs_sq": 0.5 * g * g * e * e * math.sin(th) ** 2,
        "lrhoD_hs_sq": 0.0,
        "lnrhoD_hs_sq": _log_sq(s2) + _log_sq(c2),
        "lnrho_hs_sq": _log_sq(0.25 * (2.0 + 2.0 * r)) + _log_sq(0.25 * (2.0 - 2.0 * r)),
        "C0": _binary_entropy(c2),
        "Ct": _binary_entropy(c2) - dc_abs,
    }


def _dissipative_quantities(p: ModelParams, t: float) -> dict:
    g, th = p.gamma, p.theta
    eh = math.exp(-g * t / 2.0)  # e^{-gamma t / 2}
    c2 = math.cos(th / 2.0) ** 2
    c4 = c2 * c2
    egh = math.exp(g * t / 2.0)
    alpha = (
        3.0
        + 4.0 * math.cos(th)
        + math.cos(2.0 * th)
        - 8.0 * egh * c4
        + 2.0 * egh * egh
    )
    beta = (
        3.0
        - 4.0 * (egh - 1.0) * math.cos(th)
        - (egh - 1.0) * math.cos(2.0 * th)
        - 3.0 * egh
        + 2.0 * egh * egh
    )
    p0 = eh * c2
    c0 = _binary_entropy(c2)
    q = eh * math.sqrt(max(alpha, 0.0) / 2.0)  # = sqrt(alpha/2) e^{-gt/2}, in [0, 1)
    ct = _binary_entropy(p0)
    if q >= 1.0 - 1e-14:
        ct += 0.0  # pure state: entropy term vanishes in the limit
    else:
        arg = eh * math.sqrt(max(egh * egh - 4.0 * (egh - 1.0) * c4, 0.0))
        ct += 0.5 * (
            math.log((2.0 * q + 2.0) / 16.0) + math.log(2.0 - 2.0 * q)
        ) + q * math.atanh(arg)
    return {
        "C0": c0,
        "Ct": ct,
        "lrho_hs_sq": (g * g / 32.0)
        * eh
        * eh
        * (16.0 * c4 + egh * math.sin(th) ** 2),
        "lrhoD_hs_sq": 0.5 * g * g * eh * eh * c4,
        "lnrhoD_hs_sq": _log_sq(p0) + _log_sq(1.0 - p0),
        "lnrho_hs_sq": _log_sq(0.25 * (2.0 - math.sqrt(2.0) * eh * math.sqrt(max(beta, 0.0))))
        + _log_sq(0.25 * (2.0 + math.sqrt(2.0) * eh * math.sqrt(max(beta, 0.0)))),
        "alpha": alpha,
        "beta": beta,
    }


def analytic_quantities(p: ModelParams, t: float) -> dict:
    """Every named closed-form scalar of the model evaluated at (p, t)."""
    if t < 0:
        raise InvalidParams(f"t must be nonnegative, got {t}")
    if p.model == "thermalization":
        return _thermalization_quantities(p, t)
    if p.model == "dephasing":
        return _dephasing_quantities(p, t)
    return _dissipative_quantities(p, t)


def builtin_lindbladian(p: ModelParams, match_closed_form: bool = True) -> Lindbladian:
    """GKSL generator for the model.

    For the thermalization model the closed-form solution has its coherence
    decaying at the full rate gamma while the bare thermal jumps alone give
    gamma/2.  With match_closed_form=True (default) a sigma_z dephasing term
    of rate gamma/4 is added so that the integrated trajectory reproduces
    the closed form exactly; with False the bare two-jump generator is
    returned (its action on the closed-form state reproduces the stated
    trace-norm expression).
    """
    h = np.zeros((2, 2), dtype=complex)
    if p.model == "thermalization":
        jumps = [
            Jump(SIGMA_MINUS, p.gamma0 * (p.N + 1.0)),
            Jump(SIGMA_PLUS, p.gamma0 * p.N),
        ]
        if match_closed_form:
            jumps.append(Jump(SIGMA_Z, p.gamma / 4.0))
        return Lindbladian(hamiltonian=h, jumps=tuple(jumps))
    if p.model == "dephasing":
        return Lindbladian(hamiltonian=h, jumps=(Jump(SIGMA_Z, p.gamma / 2.0),))
    return Lindbladian(hamiltonian=h, jumps=(Jump(SIGMA_MINUS, p.gamma / 2.0),))
