"""Speed-limit bound evaluation over a trajectory: entropy, information,
and coherence speed limits, the erasure time, the information-rate bound,
the action-integral variants, and the pointwise Cauchy-Schwarz tightness
diagnostic."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dynamics import Lindbladian, Trajectory, lindblad_apply
from .functionals import (
    ReferenceBasis,
    _resolve_basis,
    coherence,
    dephase_matrix,
    entropy,
    max_information,
)
from .qmath import DEFAULT_CLIP, NotPositive, hermitize, matrix_log, schatten_norm


class GridTooCoarse(ValueError):
    """Trajectory grid cannot support Simpson quadrature."""


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: numerator (functional change, nats), the named
    denominator factors, the bound value, the actual horizon T, and the
    scale-free slack bound/T (or a rate ratio for info_rate)."""

    kind: str
    numerator: float
    denominator_terms: dict[str, float]
    bound_value: float
    horizon_T: float
    slack: float
    regularized: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "numerator": self.numerator,
            "denominator_terms": dict(self.denominator_terms),
            "bound_value": self.bound_value,
            "horizon_T": self.horizon_T,
            "slack": self.slack,
            "regularized": self.regularized,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _simpson(values: np.ndarray, dx: float) -> float:
    """Composite Simpson rule on a uniform grid with an even interval count."""
    n = values.shape[0] - 1
    if n < 16:
        raise GridTooCoarse(f"need at least 17 grid points, got {n + 1}")
    if n % 2:
        raise GridTooCoarse(f"Simpson quadrature needs an even interval count, got {n}")
    return float(
        (dx / 3.0)
        * (values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum())
    )


def _speed_sq_series(
    traj: Trajectory, norm_kind: str, dephased: bool, basis: Optional[ReferenceBasis]
) -> np.ndarray:
    """||L_t(rho_t)||^2 (or of its basis diagonal) at every grid node."""
    if norm_kind not in ("hs", "tr"):
        raise ValueError(f"speed norm must be 'hs' or 'tr', got {norm_kind!r}")
    b = _resolve_basis(basis, traj.dim) if dephased else None
    out = np.empty(traj.times.shape[0])
    for k, lv in enumerate(traj.liouville_action):
        m = hermitize(dephase_matrix(lv, b) if dephased else lv)
        if norm_kind == "hs":
            out[k] = float(np.sum(np.abs(m) ** 2))
        else:
            out[k] = float(np.sum(np.abs(np.linalg.eigvalsh(m)))) ** 2
    return out


def _log_sq_series(
    traj: Trajectory, norm_kind: str, dephased: bool, basis: Optional[ReferenceBasis]
) -> tuple[np.ndarray, bool]:
    """||ln rho_t||^2 (or of the dephased state) at every node, plus a flag
    telling whether the eigenvalue floor fired anywhere."""
    if norm_kind not in ("hs", "op"):
        raise ValueError(f"log norm must be 'hs' or 'op', got {norm_kind!r}")
    b = _resolve_basis(basis, traj.dim) if dephased else None
    out = np.empty(traj.times.shape[0])
    regularized = False
    for k, rho in enumerate(traj.states):
        if dephased:
            # Eigenvalues of the dephased state are the populations.
            u = b.vectors
            w = np.diag(u.conj().T @ rho @ u).real.copy()
            w.sort()
        else:
            w = np.linalg.eigvalsh(hermitize(rho))
        if w[0] < -1e-8:
            raise NotPositive(f"state eigenvalue {w[0]:.3e} below -1e-8")
        regularized = regularized or bool(w[0] < traj.clip)
        logs = np.log(np.maximum(w, traj.clip))
        out[k] = float(np.max(logs * logs) if norm_kind == "op" else np.sum(logs * logs))
    return out, regularized


def rms_speed(
    traj: Trajectory,
    norm_kind: str = "hs",
    dephased: bool = False,
    basis: Optional[ReferenceBasis] = None,
) -> float:
    """Root-mean-square evolution speed sqrt((1/T) int ||L_t(rho_t)||^2 dt)."""
    series = _speed_sq_series(traj, norm_kind, dephased, basis)
    dx = traj.times[1] - traj.times[0]
    return float(np.sqrt(max(_simpson(series, dx), 0.0) / traj.horizon))


def avg_log_norm(
    traj: Trajectory,
    norm_kind: str = "hs",
    dephased: bool = False,
    basis: Optional[ReferenceBasis] = None,
) -> float:
    """sqrt of the time average of ||ln rho_t||^2 (or of the dephased state)."""
    series, _ = _log_sq_series(traj, norm_kind, dephased, basis)
    dx = traj.times[1] - traj.times[0]
    return float(np.sqrt(max(_simpson(series, dx), 0.0) / traj.horizon))


def _ratio_report(
    kind: str,
    numerator: float,
    denominator: float,
    terms: dict[str, float],
    T: float,
    regularized: bool,
) -> BoundReport:
    # 0/0 convention: at a fixed point both the functional change and the
    # evolution speed vanish and the bound is zero.
    if numerator == 0.0 or denominator == 0.0:
        bound = 0.0
    else:
        bound = numerator / denominator
    return BoundReport(
        kind=kind,
        numerator=numerator,
        denominator_terms=terms,
        bound_value=bound,
        horizon_T=T,
        slack=bound / T,
        regularized=regularized,
    )


def t_esl(traj: Trajectory) -> BoundReport:
    """Entropy speed limit: T >= |dS| / (Lambda_rms_HS * avg ||ln rho||_HS)."""
    dx = traj.times[1] - traj.times[0]
    T = traj.horizon
    num = abs(entropy(traj.states[-1], traj.clip) - entropy(traj.states[0], traj.clip))
    lam = rms_speed(traj, "hs")
    logs, reg = _log_sq_series(traj, "hs", False, None)
    avg = float(np.sqrt(max(_simpson(logs, dx), 0.0) / T))
    return _ratio_report(
        "esl", num, lam * avg, {"lambda_rms": lam, "avg_log_hs": avg}, T, reg
    )


def t_isl(traj: Trajectory) -> BoundReport:
    """Information speed limit: T >= |dI| / (Lambda_rms_tr * avg ||ln rho||_op)."""
    dx = traj.times[1] - traj.times[0]
    T = traj.horizon
    num = abs(
        max_information(traj.states[-1], traj.clip)
        - max_information(traj.states[0], traj.clip)
    )
    lam = rms_speed(traj, "tr")
    logs, reg = _log_sq_series(traj, "op", False, None)
    avg = float(np.sqrt(max(_simpson(logs, dx), 0.0) / T))
    return _ratio_report(
        "isl", num, lam * avg, {"lambda_rms": lam, "avg_log_op": avg}, T, reg
    )


def t_csl(traj: Trajectory, basis: Optional[ReferenceBasis] = None) -> BoundReport:
    """Coherence speed limit with the two-term (dephased + full) denominator."""
    b = _resolve_basis(basis, traj.dim)
    dx = traj.times[1] - traj.times[0]
    T = traj.horizon
    num = abs(
        coherence(traj.states[-1], b, traj.clip)
        - coherence(traj.states[0], b, traj.clip)
    )
    lam = rms_speed(traj, "hs")
    lam_d = rms_speed(traj, "hs", dephased=True, basis=b)
    logs, reg_full = _log_sq_series(traj, "hs", False, None)
    logs_d, reg_d = _log_sq_series(traj, "hs", True, b)
    avg = float(np.sqrt(max(_simpson(logs, dx), 0.0) / T))
    avg_d = float(np.sqrt(max(_simpson(logs_d, dx), 0.0) / T))
    den = lam_d * avg_d + lam * avg
    terms = {
        "lambda_rms": lam,
        "lambda_rms_d": lam_d,
        "avg_log_hs": avg,
        "avg_log_hs_d": avg_d,
    }
    return _ratio_report("csl", num, den, terms, T, reg_full or reg_d)


def erasure_time(traj: Trajectory) -> BoundReport:
    """Minimum time to erase the initial information: the information speed
    limit with numerator I(rho_0), the final information taken as zero."""
    report = t_isl(traj)
    num = max_information(traj.states[0], traj.clip)
    lam = report.denominator_terms["lambda_rms"]
    avg = report.denominator_terms["avg_log_op"]
    return _ratio_report(
        "erasure",
        num,
        lam * avg,
        dict(report.denominator_terms),
        traj.horizon,
        report.regularized,
    )


def info_rate_bound(traj: Trajectory) -> BoundReport:
    """Averaged information rate (1/T) int |dI/dt| dt against its upper bound
    Lambda_rms_tr * avg ||ln rho||_op; slack is the ratio of the two sides."""
    dx = traj.times[1] - traj.times[0]
    T = traj.horizon
    rates = np.empty(traj.times.shape[0])
    regularized = False
    for k, (rho, lv) in enumerate(zip(traj.states, traj.liouville_action)):
        lg = matrix_log(rho, traj.clip)
        regularized = regularized or lg.clipped
        rates[k] = abs(complex(np.trace(lv @ lg.value)).real)
    lhs = _simpson(rates, dx) / T
    lam = rms_speed(traj, "tr")
    logs, reg = _log_sq_series(traj, "op", False, None)
    avg = float(np.sqrt(max(_simpson(logs, dx), 0.0) / T))
    rhs = lam * avg
    return BoundReport(
        kind="info_rate",
        numerator=lhs,
        denominator_terms={
            "lambda_rms": lam,
            "avg_log_op": avg,
            "avg_abs_info_rate": lhs,
        },
        bound_value=rhs,
        horizon_T=T,
        slack=0.0 if rhs == 0.0 else lhs / rhs,
        regularized=regularized or reg,
    )


_ACTION_KINDS = {"entropy": "action_s", "information": "action_i", "coherence": "action_c"}


def action_bound(
    traj: Trajectory, kind: str, basis: Optional[ReferenceBasis] = None
) -> BoundReport:
    """Speed limits built from the time integral of the squared instantaneous
    product ||L(rho)|| * ||ln rho|| instead of time-averaged speeds."""
    if kind not in _ACTION_KINDS:
        raise ValueError(f"kind must be one of {sorted(_ACTION_KINDS)}, got {kind!r}")
    dx = traj.times[1] - traj.times[0]
    T = traj.horizon
    if kind == "entropy":
        num = abs(
            entropy(traj.states[-1], traj.clip) - entropy(traj.states[0], traj.clip)
        )
        speeds = _speed_sq_series(traj, "hs", False, None)
        logs, reg = _log_sq_series(traj, "hs", False, None)
        integral = _simpson(speeds * logs, dx)
        terms = {"action_integral": integral}
        den = integral
        num = num * num
    elif kind == "information":
        num = abs(
            max_information(traj.states[-1], traj.clip)
            - max_information(traj.states[0], traj.clip)
        )
        speeds = _speed_sq_series(traj, "tr", False, None)
        logs, reg = _log_sq_series(traj, "op", False, None)
        integral = _simpson(speeds * logs, dx)
        terms = {"action_integral": integral}
        den = integral
        num = num * num
    else:
        b = _resolve_basis(basis, traj.dim)
        num = abs(
            coherence(traj.states[-1], b, traj.clip)
            - coherence(traj.states[0], b, traj.clip)
        )
        speeds = _speed_sq_series(traj, "hs", False, None)
        logs, reg_full = _log_sq_series(traj, "hs", False, None)
        speeds_d = _speed_sq_series(traj, "hs", True, b)
        logs_d, reg_d = _log_sq_series(traj, "hs", True, b)
        lam = _simpson(speeds * logs, dx)
        lam_d = _simpson(speeds_d * logs_d, dx)
        terms = {"action_integral": lam, "action_integral_d": lam_d}
        den = (np.sqrt(max(lam_d, 0.0)) + np.sqrt(max(lam, 0.0))) ** 2
        reg = reg_full or reg_d
        num = num * num
    return _ratio_report(_ACTION_KINDS[kind], float(num), float(den), terms, T, reg)


def saturation_slack(
    lind: Lindbladian,
    rho: np.ndarray,
    t: float = 0.0,
    clip: float = DEFAULT_CLIP,
) -> float:
    """Pointwise Cauchy-Schwarz tightness |tr(L(rho) ln rho)| /
    (||L(rho)||_HS ||ln rho||_HS) in [0, 1]; zero when either factor
    vanishes (fixed point or maximally mixed state)."""
    lrho = hermitize(lindblad_apply(lind, rho, t))
    lg = matrix_log(rho, clip)
    n1 = schatten_norm(lrho, "hs")
    n2 = schatten_norm(lg.value, "hs")
    if n1 <= 1e-300 or n2 <= 1e-300:
        return 0.0
    ratio = abs(complex(np.trace(lrho @ lg.value)).real) / (n1 * n2)
    return min(ratio, 1.0)


def all_reports(
    traj: Trajectory, basis: Optional[ReferenceBasis] = None
) -> list[BoundReport]:
    """Every bound evaluated on one trajectory, in a fixed order."""
    return [
        t_esl(traj),
        t_isl(traj),
        t_csl(traj, basis),
        erasure_time(traj),
        info_rate_bound(traj),
        action_bound(traj, "entropy"),
        action_bound(traj, "information"),
        action_bound(traj, "coherence", basis),
    ]
