"""End-to-end acceptance checks.

Each test exercises one published guarantee of the package and prints a
single PASS/FAIL line to the terminal (bypassing capture) so a full run
reads as a checklist.
"""

import csv
import math
import time

import numpy as np
import pytest

from qspeed import (
    ModelParams,
    all_reports,
    analytic_quantities,
    analytic_state,
    builtin_lindbladian,
    coherence,
    coherence_rate,
    dephase,
    entropy,
    entropy_rate,
    evolve,
    initial_state,
    lindblad_apply,
    matrix_log,
    max_information,
    saturation_slack,
    schatten_norm,
    thermalization_params,
)
from qspeed.cli import main as cli_main

from conftest import random_density, random_hermitian, random_lindbladian

VALIDITY_KINDS = ("esl", "isl", "csl", "action_s", "action_i", "action_c")

MODEL_GRID = [
    ("thermalization", {"gamma0": 1.0 / 3.0, "N": 1.0}),
    ("thermalization", {"gamma0": 2.0 / 3.0, "N": 1.0}),
    ("dephasing", {"gamma": 1.0}),
    ("dephasing", {"gamma": 2.0}),
    ("dissipative", {"gamma": 1.0}),
    ("dissipative", {"gamma": 2.0}),
]
THETAS = (math.pi / 2, math.pi / 3, math.pi / 4)
HORIZONS = (0.25, 0.5, 1.0)


def _announce(capsys, label, ok, detail=""):
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"\n[acceptance] {label}: {status}{suffix}")
    assert ok, f"{label}: {detail}"


def _make_params(model, extra, theta):
    if model == "thermalization":
        return thermalization_params(extra["gamma0"], extra["N"], theta)
    return ModelParams(model=model, gamma=extra["gamma"], theta=theta)


def test_bound_validity(capsys):
    """Every speed-limit report stays below the actual horizon, on the
    built-in model grid and on random qubit/qutrit generators."""
    start = time.monotonic()
    worst = 0.0
    for model, extra in MODEL_GRID:
        for theta in THETAS:
            for T in HORIZONS:
                p = _make_params(model, extra, theta)
                traj = evolve(builtin_lindbladian(p), initial_state(theta), T, 512)
                for rep in all_reports(traj):
                    if rep.kind in VALIDITY_KINDS:
                        worst = max(worst, rep.slack)

    rng = np.random.default_rng(7)
    for dim in (2, 3):
        for _ in range(100):
            lind = random_lindbladian(rng, dim)
            rho0 = random_density(rng, dim, full_rank=True)
            traj = evolve(lind, rho0, 0.3, 256)
            for rep in all_reports(traj):
                if rep.kind in VALIDITY_KINDS:
                    worst = max(worst, rep.slack)

    elapsed = time.monotonic() - start
    ok = worst <= 1.0 + 1e-6 and elapsed < 120.0
    _announce(
        capsys,
        "1 bound validity (254 trajectories, slack <= 1 + 1e-6)",
        ok,
        f"max slack {worst:.6f}, {elapsed:.1f}s",
    )


def test_analytic_numeric_agreement(capsys):
    """RK4 trajectories track the closed-form states, and the generic
    functional/norm pipeline reproduces every closed-form scalar."""
    start = time.monotonic()
    cases = [
        (thermalization_params(1.0, 100.0, math.pi / 3), 0.05),
        (thermalization_params(1.0, 1.0, math.pi / 3), 2.0),
        (ModelParams("dephasing", gamma=2.0, theta=math.pi / 3), 2.0),
        (ModelParams("dissipative", gamma=2.0, theta=math.pi / 3), 2.0),
    ]
    worst_state = 0.0
    for p, T in cases:
        steps = 8192
        traj = evolve(builtin_lindbladian(p), initial_state(p.theta), T, steps)
        for idx in np.linspace(1, steps, 20).astype(int):
            err = np.linalg.norm(traj.states[idx] - analytic_state(p, traj.times[idx]))
            worst_state = max(worst_state, float(err))

    worst_q = 0.0

    def check(a, b):
        nonlocal worst_q
        scale = max(1.0, abs(b))
        worst_q = max(worst_q, abs(a - b) / scale)

    for p, T in cases:
        bare = builtin_lindbladian(p, match_closed_form=False)
        matched = builtin_lindbladian(p)
        for t in np.linspace(T / 20.0, T, 20):
            q = analytic_quantities(p, float(t))
            rho = analytic_state(p, float(t))
            if p.model == "thermalization":
                check(q["info"], max_information(rho))
                check(q["lrho_tr"], schatten_norm(lindblad_apply(bare, rho), "tr"))
                check(q["lnrho_op"], schatten_norm(matrix_log(rho).value, "op"))
                if math.isfinite(q["delta"]):
                    check(q["delta_scaled"], math.exp(-2 * p.gamma * t) * q["delta"])
            else:
                check(q["C0"], coherence(initial_state(p.theta)))
                check(q["Ct"], coherence(rho))
                lrho = lindblad_apply(matched, rho)
                check(q["lrho_hs_sq"], schatten_norm(lrho, "hs") ** 2)
                check(
                    q["lrhoD_hs_sq"],
                    schatten_norm(np.diag(np.diag(lrho)), "hs") ** 2,
                )
                check(
                    q["lnrho_hs_sq"],
                    schatten_norm(matrix_log(rho).value, "hs") ** 2,
                )
                check(
                    q["lnrhoD_hs_sq"],
                    schatten_norm(matrix_log(dephase(rho)).value, "hs") ** 2,
                )
                if p.model == "dephasing":
                    check(q["dC_abs"], q["C0"] - q["Ct"])

    elapsed = time.monotonic() - start
    ok = worst_state < 1e-7 and worst_q < 1e-9 and elapsed < 60.0
    _announce(
        capsys,
        "2 analytic-numeric agreement (states 1e-7, scalars 1e-9)",
        ok,
        f"state err {worst_state:.2e}, scalar err {worst_q:.2e}, {elapsed:.1f}s",
    )


def test_rate_lemmas(capsys):
    """Exact entropy/coherence rates equal centered finite differences of
    the functionals along the closed-form trajectories."""
    dt = 1e-5
    worst = 0.0
    cases = [
        thermalization_params(1.0, 0.5, math.pi / 3),
        ModelParams("dephasing", gamma=2.0, theta=math.pi / 3),
        ModelParams("dissipative", gamma=2.0, theta=math.pi / 3),
    ]
    for p in cases:
        lind = builtin_lindbladian(p)
        for t in np.linspace(0.1, 1.0, 10):
            t = float(t)
            rho = analytic_state(p, t)
            plus, minus = analytic_state(p, t + dt), analytic_state(p, t - dt)
            fd_s = (entropy(plus) - entropy(minus)) / (2 * dt)
            fd_c = (coherence(plus) - coherence(minus)) / (2 * dt)
            worst = max(worst, abs(entropy_rate(lind, rho) - fd_s))
            worst = max(worst, abs(coherence_rate(lind, rho) - fd_c))
    ok = worst < 1e-5
    _announce(
        capsys,
        "3 rate lemmas vs finite differences (1e-5 absolute)",
        ok,
        f"max deviation {worst:.2e}",
    )


def _read_fig_csv(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def test_figure_reproduction(capsys, tmp_path):
    """Regenerated reference curves: the information bound stays strictly
    below (and clear of) the horizon, and larger initial coherence gives a
    uniformly larger coherence bound."""
    ok = True
    detail = []

    rc = cli_main(["reproduce", "fig1", "--steps", "1024", "--out", str(tmp_path)])
    rows = _read_fig_csv(tmp_path / "fig1.csv")
    slacks = [float(r["bound"]) / float(r["T"]) for r in rows]
    ok &= rc == 0 and len(rows) == 60
    ok &= all(float(r["bound"]) < float(r["T"]) for r in rows)
    ok &= max(slacks) < 0.9
    detail.append(f"fig1 max slack {max(slacks):.3f}")

    for fig in ("fig2", "fig3"):
        rc = cli_main(["reproduce", fig, "--steps", "1024", "--out", str(tmp_path)])
        rows = _read_fig_csv(tmp_path / f"{fig}.csv")
        by_theta = {}
        for r in rows:
            by_theta.setdefault(float(r["theta"]), []).append(float(r["bound"]))
        thetas = sorted(by_theta, reverse=True)
        ordered = all(
            a > b
            for hi, lo in zip(thetas, thetas[1:])
            for a, b in zip(by_theta[hi], by_theta[lo])
        )
        ok &= rc == 0 and len(thetas) == 3 and ordered
        detail.append(f"{fig} ordering {'strict' if ordered else 'violated'}")

    _announce(capsys, "4 figure reproduction", bool(ok), "; ".join(detail))


def test_non_saturation(capsys):
    """The pointwise Cauchy-Schwarz step is never tight along the model
    trajectories."""
    worst = 0.0
    cases = [
        thermalization_params(1.0, 100.0, math.pi / 3),
        ModelParams("dephasing", gamma=2.0, theta=math.pi / 3),
        ModelParams("dissipative", gamma=2.0, theta=math.pi / 3),
    ]
    for p in cases:
        lind = builtin_lindbladian(p)
        for t in np.linspace(0.1, 1.0, 19):
            rho = analytic_state(p, float(t))
            worst = max(worst, saturation_slack(lind, rho))
    ok = worst < 1.0 - 1e-3
    _announce(
        capsys,
        "5 non-saturation diagnostic (< 1 - 1e-3)",
        ok,
        f"max tightness {worst:.6f}",
    )


def test_numerics_hygiene(capsys):
    """Schatten norm inequalities on random pairs, and fourth-order step
    convergence of the integrator against the closed forms."""
    rng = np.random.default_rng(11)
    ok = True
    for _ in range(1000):
        dim = int(rng.integers(1, 7))
        a = random_hermitian(rng, dim)
        b = random_hermitian(rng, dim)
        inner = abs(np.trace(a @ b))
        margin = 1 + 1e-12
        ok &= inner <= schatten_norm(a, "hs") * schatten_norm(b, "hs") * margin
        ok &= inner <= schatten_norm(a, "tr") * schatten_norm(b, "op") * margin
        ok &= schatten_norm(a, "op") <= schatten_norm(a, "hs") * margin
        ok &= schatten_norm(a, "hs") <= schatten_norm(a, "tr") * margin

    ratios = []
    for p in (
        thermalization_params(1.0, 1.0, math.pi / 3),
        ModelParams("dephasing", gamma=2.0, theta=math.pi / 3),
        ModelParams("dissipative", gamma=2.0, theta=math.pi / 3),
    ):
        lind = builtin_lindbladian(p)
        rho0 = initial_state(p.theta)
        errs = [
            np.linalg.norm(evolve(lind, rho0, 1.0, n).states[-1] - analytic_state(p, 1.0))
            for n in (64, 128)
        ]
        ratios.append(errs[0] / errs[1])
    ok = bool(ok) and min(ratios) >= 15.0
    _announce(
        capsys,
        "6 numerics hygiene (norm inequalities + RK4 halving >= 15x)",
        bool(ok),
        f"min halving ratio {min(ratios):.1f}",
    )
