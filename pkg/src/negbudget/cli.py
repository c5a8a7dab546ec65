"""Command-line entry point for the experiment families.

Subcommands: two-body, chain, cv-native, seeds, damping, dwigner, validate.
Flags override config-file values, which override defaults.  Exit codes:
0 success, 2 usage, 3 numerical-contract violation, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import budget as bd
from . import dwigner as dw
from . import dynamics as dyn
from . import phase_space as ps
from . import validate as val
from .errors import GridError, NumericalContractError, TruncationError
from .fock import DensityOperator, fock_state, odd_cat_state, squeezed_fock_state

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

DEFAULTS = {
    "g": 1.0,
    "sites": 4,
    "dim": 20,
    "grid_extent": 5.0,
    "grid_points": 201,
    "times": 401,
    "gamma": 0.05,
    "alpha": 1.4,
    "squeeze_r": 0.35,
    "state": "fock1",
    "out": "runs",
}

_FLOAT_KEYS = {"g", "grid_extent", "gamma", "alpha", "squeeze_r"}
_INT_KEYS = {"sites", "dim", "grid_points", "times"}


@dataclass
class RunConfig:
    experiment: str
    g: float = DEFAULTS["g"]
    sites: int = DEFAULTS["sites"]
    dim: int = DEFAULTS["dim"]
    grid_extent: float = DEFAULTS["grid_extent"]
    grid_points: int = DEFAULTS["grid_points"]
    times: int = DEFAULTS["times"]
    gamma: float = DEFAULTS["gamma"]
    alpha: float = DEFAULTS["alpha"]
    squeeze_r: float = DEFAULTS["squeeze_r"]
    state: str = DEFAULTS["state"]
    out: str = DEFAULTS["out"]
    extras: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.g <= 0:
            raise UsageError("--g must be positive")
        if self.grid_extent <= 0 or self.grid_points < 2:
            raise UsageError("grid extent must be > 0 and grid points >= 2")
        if self.times < 2:
            raise UsageError("--times must be at least 2")
        if self.sites < 2:
            raise UsageError("--sites must be at least 2")
        if self.dim < 2:
            raise UsageError("--dim must be at least 2")
        if self.gamma < 0:
            raise UsageError("--gamma must be >= 0")

    def grid(self) -> ps.PhaseGrid:
        return ps.PhaseGrid(self.grid_extent, self.grid_points)


class UsageError(ValueError):
    pass


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def read_config_file(path: str) -> dict:
    """Flat key = value file; '#' comments; unknown keys rejected."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            if key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _INT_KEYS:
                values[key] = int(value)
            else:
                values[key] = value
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negbudget",
        description="Phase-space non-classicality budgets for excitation-preserving dynamics",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name, help_text in [
        ("two-body", "XY exchange run: trajectory plus Wigner snapshots"),
        ("chain", "PST chain run: site/block heatmaps and summary"),
        ("cv-native", "beam-splitter run with Fock |1> in the truncated space"),
        ("seeds", "seed comparison: Fock |1>, odd cat, squeezed |1>"),
        ("damping", "amplitude-damped run and tracking infidelity"),
        ("dwigner", "discrete Wigner distribution of a qutrit state"),
        ("validate", "run the invariant suite"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--g", type=float, default=None, help="exchange rate (default 1.0)")
        p.add_argument("--sites", type=int, default=None, help="chain length (default 4)")
        p.add_argument("--dim", type=int, default=None, help="Fock truncation per mode (default 20)")
        p.add_argument("--grid-extent", type=float, default=None, dest="grid_extent")
        p.add_argument("--grid-points", type=int, default=None, dest="grid_points")
        p.add_argument("--times", type=int, default=None, help="number of time samples (default 401)")
        p.add_argument("--gamma", type=float, default=None, help="damping rate in units of g")
        p.add_argument("--alpha", type=float, default=None, help="cat amplitude (default 1.4)")
        p.add_argument("--squeeze-r", type=float, default=None, dest="squeeze_r")
        p.add_argument("--state", type=str, default=None, choices=["fock1", "strange", "mixed"],
                       help="dwigner input state (default fock1)")
        p.add_argument("--out", type=str, default=None, help="output directory (default runs/)")
        p.add_argument("--config", type=str, default=None, help="flat key=value config file")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = dict(DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    cfg = RunConfig(experiment=args.experiment, **values)
    cfg.validate()
    return cfg


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join("" if c is None else (_fmt(c) if isinstance(c, float) else str(c)) for c in row) + "\n")


def _write_meta(outdir: Path, cfg: RunConfig, extra: dict | None = None) -> None:
    meta = {k: v for k, v in asdict(cfg).items() if k != "extras"}
    meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    if extra:
        meta.update(extra)
    (outdir / "run_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True), encoding="utf-8")


def run_two_body(cfg: RunConfig, outdir: Path) -> None:
    params = dyn.ExchangeParams(cfg.g)
    grid = cfg.grid()
    traj = bd.two_body_trajectory(params, grid, cfg.times)
    period = params.period
    rows = [
        (
            float(t),
            float(t / period),
            float(traj.site_negativities[i, 0]),
            float(traj.site_negativities[i, 1]),
            float(traj.total_negativity[i]),
            float(traj.budget),
            float(traj.gap[i]),
            float(traj.concurrence[i]),
        )
        for i, t in enumerate(traj.times)
    ]
    _write_csv(outdir / "fig1_trajectory.csv",
               ["t", "t_over_T", "N_A", "N_B", "N_tot", "N_budget", "gap", "concurrence"], rows)
    for frac in (0.0, 0.25, 0.5):
        t = frac * period
        amps = dyn.xy_two_qubit_state(params, t)
        p_b, p_a = np.abs(amps.c) ** 2
        for label, p in (("A", p_a), ("B", p_b)):
            f = ps.wigner_single_mode(dyn.site_mixture(float(p)), grid)
            name = f"fig2_wigner_{label}_t{frac:g}.csv"
            ps.export_field_csv(f, outdir / name)
    _write_meta(outdir, cfg, {"budget": traj.budget})


def run_chain(cfg: RunConfig, outdir: Path) -> None:
    params = dyn.ExchangeParams(cfg.g)
    traj = bd.chain_trajectory(cfg.sites, params, cfg.grid(), cfg.times)
    t_star = traj.metadata["t_star"]
    n_sites = cfg.sites
    summary = []
    for i, t in enumerate(traj.times):
        summary.append(
            (
                float(t),
                float(t / t_star),
                float(traj.total_negativity[i]),
                float(traj.budget),
                float(traj.site_probabilities[i].max()),
                float(traj.block_probabilities[i].max()),
            )
        )
    _write_csv(outdir / "fig3_summary.csv",
               ["t", "t_over_tstar", "N_tot_chain", "N_budget", "max_pk", "max_pb2"], summary)
    site_cols = [f"site_{k}" for k in range(n_sites)]
    _write_csv(outdir / "fig3_p_heatmap.csv", ["t"] + site_cols,
               [(float(t), *map(float, traj.site_probabilities[i])) for i, t in enumerate(traj.times)])
    _write_csv(outdir / "fig3_nk_heatmap.csv", ["t"] + site_cols,
               [(float(t), *map(float, traj.site_negativities[i])) for i, t in enumerate(traj.times)])
    block_cols = [f"block_{b}" for b in range(n_sites - 1)]
    block_rows = []
    for i, t in enumerate(traj.times):
        vals = traj.block_negativities[i]
        block_rows.append((float(t), *[None if np.isnan(v) else float(v) for v in vals]))
    _write_csv(outdir / "fig3_block_heatmap.csv", ["t"] + block_cols, block_rows)
    _write_meta(outdir, cfg, {
        "t_star": t_star,
        "quadrature_check_max_dev": traj.metadata["quadrature_check_max_dev"],
    })


def run_cv_native(cfg: RunConfig, outdir: Path) -> None:
    grid = cfg.grid()
    traj = bd.seed_trajectory(fock_state(1, cfg.dim), cfg.g, cfg.dim, grid, cfg.times, label="fock1")
    period = dyn.ExchangeParams(cfg.g).period
    rows = []
    for i, t in enumerate(traj.times):
        rows.append(
            (
                float(t),
                float(t / period),
                float(traj.site_negativities[i, 0]),
                float(traj.site_negativities[i, 1]),
                float(traj.total_negativity[i]),
                float(traj.budget),
                float(traj.gap[i]),
            )
        )
    _write_csv(outdir / "fig4_trajectory.csv",
               ["t", "t_over_T", "N_A", "N_B", "N_tot", "N_budget", "gap"], rows)
    _write_meta(outdir, cfg, {"truncation_warning": traj.metadata["truncation_warning"]})


def _comparison_seeds(cfg: RunConfig) -> dict:
    return {
        "fock1": fock_state(1, cfg.dim),
        "cat": odd_cat_state(cfg.alpha, cfg.dim),
        "squeezed": squeezed_fock_state(cfg.squeeze_r, 1, cfg.dim),
    }


def run_seeds(cfg: RunConfig, outdir: Path) -> None:
    grid = cfg.grid()
    trajs = bd.seed_comparison(_comparison_seeds(cfg), cfg.g, cfg.dim, grid, cfg.times)
    period = dyn.ExchangeParams(cfg.g).period
    rows = []
    for label, traj in trajs.items():
        norm = traj.metadata["normalized"]
        for i, t in enumerate(traj.times):
            rows.append(
                (
                    float(t),
                    float(t / period),
                    label,
                    float(traj.total_negativity[i]),
                    float(traj.budget),
                    float(norm[i]),
                )
            )
    _write_csv(outdir / "fig5_seeds.csv",
               ["t", "t_over_T", "seed_label", "N_tot_abs", "N_seed", "N_tot_normalized"], rows)
    first = next(iter(trajs.values()))
    _write_meta(outdir, cfg, {
        "budgets": {label: t.budget for label, t in trajs.items()},
        "pairwise_sup_distance": first.metadata["pairwise_sup_distance"],
    })


def run_damping(cfg: RunConfig, outdir: Path) -> None:
    params = dyn.ExchangeParams(cfg.g)
    grid = cfg.grid()
    n_times = min(cfg.times, 101)  # Trotter stepping dominates; decimate by default
    ideal = bd.damped_two_body_trajectory(params, 0.0, grid, n_times)
    rows = []
    epsbars = {}
    for gamma_rel in (0.0, cfg.gamma):
        gamma = gamma_rel * cfg.g
        traj = ideal if gamma == 0 else bd.damped_two_body_trajectory(params, gamma, grid, n_times)
        eps, mean = bd.tracking_infidelity(ideal, traj)
        epsbars[str(gamma_rel)] = mean
        for i, t in enumerate(traj.times):
            rows.append(
                (
                    float(t),
                    float(gamma),
                    float(ideal.total_negativity[i]),
                    float(traj.total_negativity[i]),
                    float(eps[i]),
                )
            )
    _write_csv(outdir / "damping.csv",
               ["t", "gamma", "N_tot_ideal", "N_tot_damped", "epsilon"], rows)
    _write_meta(outdir, cfg, {"mean_infidelity": epsbars, "n_times": n_times})


def run_dwigner(cfg: RunConfig, outdir: Path) -> None:
    d = 3 if cfg.dim == DEFAULTS["dim"] else cfg.dim
    if d not in dw.SUPPORTED_DIMS:
        raise UsageError(f"--dim for dwigner must be one of {dw.SUPPORTED_DIMS}")
    if cfg.state == "fock1":
        rho = fock_state(1, d).density()
    elif cfg.state == "strange":
        rho = dw.strange_state(d).density()
    else:
        rho = DensityOperator(np.eye(d, dtype=complex) / d, (d,))
    w = dw.discrete_wigner(rho, d)
    _write_csv(outdir / "dwigner_distribution.csv",
               ["q"] + [f"p_{p}" for p in range(d)],
               [(q, *map(float, w.values[q])) for q in range(d)])
    summary = {
        "d": d,
        "state_label": cfg.state,
        "sum_negativity": dw.discrete_sum_negativity(w),
    }
    (outdir / "dwigner_summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True),
                                                 encoding="utf-8")
    _write_meta(outdir, cfg)


def run(cfg: RunConfig) -> int:
    if cfg.experiment == "validate":
        return EXIT_OK if val.run_all() else EXIT_NUMERIC
    outdir = Path(cfg.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return EXIT_IO
    runner = {
        "two-body": run_two_body,
        "chain": run_chain,
        "cv-native": run_cv_native,
        "seeds": run_seeds,
        "damping": run_damping,
        "dwigner": run_dwigner,
    }[cfg.experiment]
    try:
        runner(cfg, outdir)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalContractError, GridError, TruncationError) as exc:
        print(f"numerical contract violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
