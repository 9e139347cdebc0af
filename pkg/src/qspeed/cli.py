"""Command-line front end: simulate trajectories, evaluate bounds, sweep
parameter grids, and reproduce the reference figures as CSV plus plots.

Exit codes: 0 ok, 2 usage/config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds as bounds_mod
from .bounds import GridTooCoarse, all_reports
from .dynamics import (
    DimensionMismatch,
    Lindbladian,
    PositivityLost,
    check_density,
    evolve,
    load_lindbladian,
)
from .functionals import ReferenceBasis, coherence, entropy, max_information
from .models import (
    MODEL_NAMES,
    InvalidParams,
    ModelParams,
    analytic_state,
    builtin_lindbladian,
    initial_state,
)
from .qmath import DEFAULT_CLIP

log = logging.getLogger("qspeed")

FIG1_TMIN_DEFAULT = 0.5
# The dissipative coherence curves for theta = pi/2 and pi/3 cross near
# T ~ 0.065; the reference plots' qualitative ordering claim only holds
# above that, so the default sweep starts at 0.1.
FIG23_TMIN_DEFAULT = 0.1
FIG_TMAX = math.pi / 3.0
FIG_POINTS = 60
FIG_THETAS = (math.pi / 2.0, math.pi / 3.0, math.pi / 4.0)


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _float_list(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _add_common(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    conv = _float_list if sweep else float
    p.add_argument("--model", choices=MODEL_NAMES, help="built-in analytic model")
    p.add_argument("--lindbladian", metavar="JSON", help="custom generator file")
    p.add_argument("--rho0", metavar="JSON", help="initial state file (matrix of [re, im] pairs)")
    p.add_argument("--gamma0", type=conv, default=None, help="spontaneous emission rate")
    p.add_argument("--N", type=conv, default=None, help="mean bath photon number")
    p.add_argument("--gamma", type=conv, default=None, help="total/dephasing/dissipation rate")
    p.add_argument("--theta", type=conv, default=None, help="initial Bloch angle in [0, pi]")
    p.add_argument("--T", type=conv, default=None, help="evolution horizon")
    p.add_argument("--steps", type=int, default=4096, help="RK4 steps (even, >= 16)")
    p.add_argument("--clip", type=float, default=DEFAULT_CLIP, help="log eigenvalue floor")
    p.add_argument("--basis", default="computational", help="'computational' or a JSON unitary file")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qspeed",
        description="Speed limits on entropy, information, and coherence for Lindblad dynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate a trajectory and tabulate functionals")
    _add_common(p_sim)

    p_bounds = sub.add_parser("bounds", help="evaluate every speed-limit bound on one trajectory")
    _add_common(p_bounds)

    p_rep = sub.add_parser("reproduce", help="regenerate a reference figure as CSV + plot")
    p_rep.add_argument("figure", choices=("fig1", "fig2", "fig3"))
    p_rep.add_argument("--out", default=".")
    p_rep.add_argument("--steps", type=int, default=1024)
    p_rep.add_argument("--clip", type=float, default=DEFAULT_CLIP)
    p_rep.add_argument("--t-min", dest="t_min", type=float, default=None,
                       help="override the lower horizon of the sweep")

    p_sweep = sub.add_parser("sweep", help="evaluate bounds over a parameter grid")
    _add_common(p_sweep, sweep=True)

    return parser


def _load_matrix(path: str) -> np.ndarray:
    with open(path) as f:
        data = json.load(f)
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)


def _resolve_basis_arg(arg: str, dim: int) -> ReferenceBasis:
    if arg == "computational":
        return ReferenceBasis.computational(dim)
    return ReferenceBasis(_load_matrix(arg))


def _model_params(model, gamma0=None, N=None, gamma=None, theta=None) -> ModelParams:
    if theta is None:
        raise UsageError("--theta is required for built-in models")
    if model == "thermalization":
        if gamma0 is None or N is None:
            raise UsageError("thermalization needs --gamma0 and --N")
        expected = gamma0 * (2.0 * N + 1.0)
        if gamma is None:
            gamma = expected
        elif abs(gamma - expected) > 1e-9:
            raise UsageError(
                f"--gamma {gamma} inconsistent with gamma0*(2N+1) = {expected}"
            )
    else:
        if gamma is None:
            raise UsageError(f"{model} needs --gamma")
    return ModelParams(
        model=model, gamma=gamma, theta=theta, gamma0=gamma0 or 0.0, N=N or 0.0
    )


def _problem(args):
    """Resolve (lindbladian, rho0) from CLI flags."""
    if args.model and args.lindbladian:
        raise UsageError("--model and --lindbladian are mutually exclusive")
    if args.model:
        params = _model_params(
            args.model, gamma0=args.gamma0, N=args.N, gamma=args.gamma, theta=args.theta
        )
        lind = builtin_lindbladian(params)
        rho0 = (
            check_density(_load_matrix(args.rho0))
            if args.rho0
            else initial_state(params.theta)
        )
        return lind, rho0
    if args.lindbladian:
        lind = load_lindbladian(args.lindbladian)
        if args.rho0:
            rho0 = check_density(_load_matrix(args.rho0))
        elif args.theta is not None and lind.dim == 2:
            rho0 = initial_state(args.theta)
        else:
            rho0 = np.eye(lind.dim, dtype=complex) / lind.dim
        return lind, rho0
    raise UsageError("one of --model or --lindbladian is required")


def _check_run_config(args) -> None:
    if args.T is None or args.T <= 0:
        raise UsageError("--T must be given and positive")
    if args.steps < 16 or args.steps % 2:
        raise UsageError("--steps must be even and at least 16")
    if not (0.0 < args.clip <= 1e-6):
        raise UsageError("--clip must lie in (0, 1e-6]")


def run_simulate(args) -> int:
    _check_run_config(args)
    lind, rho0 = _problem(args)
    basis = _resolve_basis_arg(args.basis, lind.dim)
    traj = evolve(lind, rho0, args.T, args.steps, clip=args.clip)
    rows = []
    for t, rho in zip(traj.times, traj.states):
        s = entropy(rho, traj.clip)
        rows.append(
            {
                "t": t,
                "S": s,
                "I": max_information(rho, traj.clip),
                "C": coherence(rho, basis, traj.clip),
                "purity": float(np.trace(rho @ rho).real),
                "pop0": float(rho[0, 0].real),
                "coh_re": float(rho[0, 1].real),
                "coh_im": float(rho[0, 1].imag),
            }
        )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    header = ["t", "S", "I", "C", "purity", "pop0", "coh_re", "coh_im"]
    if args.format == "json":
        path = outdir / "simulate.json"
        with open(path, "w") as f:
            json.dump([{k: float(r[k]) for k in header} for r in rows], f, indent=2)
    else:
        path = outdir / "simulate.csv"
        with open(path, "w") as f:
            f.write(",".join(header) + "\n")
            for r in rows:
                f.write(",".join(_fmt(r[k]) for k in header) + "\n")
    log.info("wrote %s (%d rows)", path, len(rows))
    print(path)
    return 0


def run_bounds(args) -> int:
    _check_run_config(args)
    lind, rho0 = _problem(args)
    basis = _resolve_basis_arg(args.basis, lind.dim)
    traj = evolve(lind, rho0, args.T, args.steps, clip=args.clip)
    reports = all_reports(traj, basis)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "bounds.json"
    with open(path, "w") as f:
        json.dump([r.to_dict() for r in reports], f, indent=2)
    log.info("wrote %s", path)
    print(path)
    return 0


def _fig_grid(t_min: float, n: int = FIG_POINTS) -> np.ndarray:
    return np.linspace(t_min, FIG_TMAX, n)


def _plot_curves(path, curves, xlabel, ylabel, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for label, xs, ys in curves:
        ax.plot(xs, ys, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(curves) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def run_reproduce(args) -> int:
    if args.steps < 16 or args.steps % 2:
        raise UsageError("--steps must be even and at least 16")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{args.figure}.csv"
    png_path = outdir / f"{args.figure}.png"

    if args.figure == "fig1":
        t_min = args.t_min if args.t_min is not None else FIG1_TMIN_DEFAULT
        params = _model_params(
            "thermalization", gamma0=1.0, N=100.0, theta=math.pi / 3.0
        )
        lind = builtin_lindbladian(params)
        rho0 = initial_state(params.theta)
        grid = _fig_grid(t_min)
        values = []
        for T in grid:
            traj = evolve(lind, rho0, float(T), args.steps, clip=args.clip)
            values.append(bounds_mod.t_isl(traj).bound_value)
        with open(csv_path, "w") as f:
            f.write("T,bound\n")
            for T, v in zip(grid, values):
                f.write(f"{_fmt(T)},{_fmt(v)}\n")
        _plot_curves(
            png_path,
            [("T_ISL", grid, values)],
            "T",
            "T_ISL",
            "Information speed limit, thermalizing atom",
        )
    else:
        model = "dephasing" if args.figure == "fig2" else "dissipative"
        t_min = args.t_min if args.t_min is not None else FIG23_TMIN_DEFAULT
        grid = _fig_grid(t_min)
        curves = []
        with open(csv_path, "w") as f:
            f.write("T,bound,theta\n")
            for theta in FIG_THETAS:
                params = ModelParams(model=model, gamma=2.0, theta=theta)
                lind = builtin_lindbladian(params)
                rho0 = initial_state(theta)
                values = []
                for T in grid:
                    traj = evolve(lind, rho0, float(T), args.steps, clip=args.clip)
                    values.append(bounds_mod.t_csl(traj).bound_value)
                for T, v in zip(grid, values):
                    f.write(f"{_fmt(T)},{_fmt(v)},{_fmt(theta)}\n")
                curves.append((f"theta={theta:.4f}", grid, values))
        _plot_curves(
            png_path, curves, "T", "T_CSL", f"Coherence speed limit, {model} model"
        )
    log.info("wrote %s and %s", csv_path, png_path)
    print(csv_path)
    return 0


SWEEP_BOUND_COLUMNS = [
    "esl",
    "isl",
    "csl",
    "erasure",
    "info_rate",
    "action_s",
    "action_i",
    "action_c",
]

MAX_SWEEP_POINTS = 10_000


def run_sweep(args) -> int:
    if args.steps < 16 or args.steps % 2:
        raise UsageError("--steps must be even and at least 16")
    if not (0.0 < args.clip <= 1e-6):
        raise UsageError("--clip must lie in (0, 1e-6]")
    if not args.model:
        raise UsageError("sweep requires --model")

    def axis(values, fallback):
        if values is None:
            return [fallback] if fallback is not None else None
        return values

    gamma0s = axis(args.gamma0, None)
    ns = axis(args.N, None)
    gammas = axis(args.gamma, None)
    thetas = args.theta if args.theta is not None else None
    horizons = args.T if args.T is not None else None
    if thetas is None or horizons is None:
        raise UsageError("sweep requires --theta and --T value lists")
    if args.model == "thermalization":
        if gamma0s is None or ns is None:
            raise UsageError("thermalization sweep needs --gamma0 and --N")
        if gammas is None:
            gammas = [None]
    else:
        if gammas is None:
            raise UsageError(f"{args.model} sweep needs --gamma")
        gamma0s, ns = [None], [None]

    grid = list(itertools.product(gamma0s, ns, gammas, thetas, horizons))
    if len(grid) > MAX_SWEEP_POINTS:
        raise UsageError(f"sweep grid of {len(grid)} points exceeds {MAX_SWEEP_POINTS}")

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "sweep.csv"
    header = ["model", "gamma0", "N", "gamma", "theta", "T"] + SWEEP_BOUND_COLUMNS
    with open(path, "w") as f:
        f.write(",".join(header) + "\n")
        for g0, n, g, theta, T in grid:
            params = _model_params(args.model, gamma0=g0, N=n, gamma=g, theta=theta)
            lind = builtin_lindbladian(params)
            traj = evolve(lind, initial_state(theta), T, args.steps, clip=args.clip)
            basis = _resolve_basis_arg(args.basis, lind.dim)
            values = {r.kind: r.bound_value for r in all_reports(traj, basis)}
            row = [
                params.model,
                _fmt(params.gamma0),
                _fmt(params.N),
                _fmt(params.gamma),
                _fmt(params.theta),
                _fmt(T),
            ] + [_fmt(values[k]) for k in SWEEP_BOUND_COLUMNS]
            f.write(",".join(row) + "\n")
    log.info("wrote %s (%d rows)", path, len(grid))
    print(path)
    return 0


def main(argv=None) -> int:
    level = os.environ.get("QSL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "simulate":
            return run_simulate(args)
        if args.command == "bounds":
            return run_bounds(args)
        if args.command == "reproduce":
            return run_reproduce(args)
        if args.command == "sweep":
            return run_sweep(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, InvalidParams, DimensionMismatch, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as e:
        if isinstance(e, GridTooCoarse):
            print(f"error: {e}", file=sys.stderr)
            return 3
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PositivityLost, GridTooCoarse, FloatingPointError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
