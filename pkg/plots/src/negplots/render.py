"""Render publication-style figures from negbudget CSV run directories.

Reads only the CSV/JSON artifacts a run leaves behind; never touches the
simulation library. Every figure carries the run parameters as a footer so
the image is self-describing, and rendering twice from the same inputs
produces byte-identical files.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "negbudget-plots"

import matplotlib.pyplot as plt
from matplotlib.colors import TwoSlopeNorm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_IO = 4

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "damping")

SCHEMAS = {
    "fig1_trajectory.csv": ["t", "t_over_T", "N_A", "N_B", "N_tot", "N_budget", "gap", "concurrence"],
    "fig3_summary.csv": ["t", "t_over_tstar", "N_tot_chain", "N_budget", "max_pk", "max_pb2"],
    "fig4_trajectory.csv": ["t", "t_over_T", "N_A", "N_B", "N_tot", "N_budget", "gap"],
    "fig5_seeds.csv": ["t", "t_over_T", "seed_label", "N_tot_abs", "N_seed", "N_tot_normalized"],
    "damping.csv": ["t", "gamma", "N_tot_ideal", "N_tot_damped", "epsilon"],
}

WIGNER_SNAPSHOTS = [f"fig2_wigner_{mode}_t{frac:g}.csv" for mode in "AB" for frac in (0.0, 0.25, 0.5)]


class SchemaError(ValueError):
    """A CSV does not match the layout the CLI writes."""


@dataclass(frozen=True)
class FigureSpec:
    indir: Path
    fig: str
    out: Path

    def __post_init__(self):
        if self.fig not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.fig!r}; expected one of {FIGURE_IDS}")


def load_table(path: Path, text_columns: tuple[str, ...] = ()) -> dict[str, np.ndarray]:
    """Read a CSV whose header must equal the known schema for its filename."""
    expected = SCHEMAS[path.name]
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    for col in expected:
        if col not in header:
            raise SchemaError(f"{path.name}: missing column {col!r}")
    for col in header:
        if col not in expected:
            raise SchemaError(f"{path.name}: unexpected column {col!r}")
    if header != expected:
        raise SchemaError(f"{path.name}: columns out of order, first mismatch "
                          f"{next(h for h, e in zip(header, expected) if h != e)!r}")
    raw = [line.split(",") for line in lines[1:] if line]
    cols = {}
    for j, name in enumerate(header):
        vals = [row[j] for row in raw]
        if name in text_columns:
            cols[name] = np.array(vals)
        else:
            try:
                cols[name] = np.array([float(v) if v else np.nan for v in vals])
            except ValueError as exc:
                raise SchemaError(f"{path.name}: non-numeric entry in column {name!r}") from exc
    return cols


def load_heatmap(path: Path, prefix: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a t-indexed heatmap CSV with columns t, <prefix>_0, <prefix>_1, ..."""
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    if header[0] != "t":
        raise SchemaError(f"{path.name}: first column must be 't', got {header[0]!r}")
    for k, col in enumerate(header[1:]):
        if col != f"{prefix}_{k}":
            raise SchemaError(f"{path.name}: unexpected column {col!r} (wanted {prefix}_{k!r})")
    rows = [line.split(",") for line in lines[1:] if line]
    t = np.array([float(r[0]) for r in rows])
    values = np.array([[float(v) if v else np.nan for v in r[1:]] for r in rows])
    return t, values


def load_wigner_matrix(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a Wigner snapshot: header row Re(alpha), first column Im(alpha)."""
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    if header[0] != "":
        raise SchemaError(f"{path.name}: corner cell of the axis header must be empty")
    x = np.array([float(v) for v in header[1:]])
    rows = [line.split(",") for line in lines[1:] if line]
    y = np.array([float(r[0]) for r in rows])
    w = np.array([[float(v) for v in r[1:]] for r in rows])
    return x, y, w


def run_footer(indir: Path) -> str:
    meta_path = indir / "run_meta.json"
    if not meta_path.exists():
        return ""
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    skip = {"timestamp", "out", "extras"}
    parts = [f"{k}={meta[k]}" for k in sorted(meta)
             if k not in skip and isinstance(meta[k], (int, float, str))]
    return "  ".join(parts)


def _finish(fig, spec: FigureSpec) -> None:
    footer = run_footer(spec.indir)
    if footer:
        fig.text(0.01, 0.005, footer, fontsize=5, color="0.4", family="monospace")
    base = spec.out.with_suffix("")
    base.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(base.with_suffix(".png"), dpi=150, metadata={"Software": "negbudget-plots"})
    fig.savefig(base.with_suffix(".svg"), metadata={"Date": None})
    plt.close(fig)


def render_fig1(spec: FigureSpec) -> None:
    cols = load_table(spec.indir / "fig1_trajectory.csv")
    x = cols["t_over_T"]
    fig, (ax_c, ax_sites, ax_tot) = plt.subplots(3, 1, figsize=(5.0, 7.0), sharex=True)
    ax_c.plot(x, cols["concurrence"], color="tab:purple")
    ax_c.set_ylabel("C(t)")
    ax_sites.plot(x, cols["N_A"], label=r"$\mathcal{N}_A$", color="tab:blue")
    ax_sites.plot(x, cols["N_B"], label=r"$\mathcal{N}_B$", color="tab:orange")
    ax_sites.set_ylabel("site negativity")
    ax_sites.legend(frameon=False)
    ax_tot.plot(x, cols["N_tot"], label=r"$\mathcal{N}_{tot}$", color="tab:green")
    ax_tot.axhline(cols["N_budget"][0], ls="--", color="k", lw=1, label="budget")
    ax_tot.fill_between(x, cols["N_tot"], cols["N_budget"], color="tab:green",
                        alpha=0.15, label="gap")
    ax_tot.set_ylabel("total vs budget")
    ax_tot.set_xlabel("t / T")
    ax_tot.legend(frameon=False)
    fig.tight_layout(rect=(0, 0.02, 1, 1))
    _finish(fig, spec)


def render_fig2(spec: FigureSpec) -> None:
    panels = []
    for name in WIGNER_SNAPSHOTS:
        path = spec.indir / name
        if not path.exists():
            raise SchemaError(f"missing Wigner snapshot {name}")
        panels.append((name, *load_wigner_matrix(path)))
    vmax = max(np.abs(w).max() for _, _, _, w in panels)
    norm = TwoSlopeNorm(vmin=-vmax, vcenter=0.0, vmax=vmax)
    fig, axes = plt.subplots(2, 3, figsize=(9.0, 6.0), sharex=True, sharey=True)
    for ax, (name, x, y, w) in zip(axes.ravel(), panels):
        im = ax.pcolormesh(x, y, w, cmap="RdBu_r", norm=norm, shading="nearest")
        label = name.removeprefix("fig2_wigner_").removesuffix(".csv")
        ax.set_title(label.replace("_t", " at t/T = "), fontsize=9)
        ax.set_aspect("equal")
    fig.supxlabel(r"Re $\alpha$")
    fig.supylabel(r"Im $\alpha$")
    fig.colorbar(im, ax=axes, shrink=0.8, label=r"$W(\alpha)$")
    _finish(fig, spec)


def _heatmap(ax, t, values, label, cmap="viridis"):
    masked = np.ma.masked_invalid(values.T)
    cm = matplotlib.colormaps[cmap].copy()
    cm.set_bad("0.85")  # decimated rows show as gray, not holes in the data
    im = ax.pcolormesh(t, np.arange(values.shape[1]), masked, cmap=cm, shading="nearest")
    ax.set_ylabel(label)
    return im


def render_fig3(spec: FigureSpec) -> None:
    cols = load_table(spec.indir / "fig3_summary.csv")
    t_p, probs = load_heatmap(spec.indir / "fig3_p_heatmap.csv", "site")
    t_n, negs = load_heatmap(spec.indir / "fig3_nk_heatmap.csv", "site")
    t_b, blocks = load_heatmap(spec.indir / "fig3_block_heatmap.csv", "block")
    fig, axes = plt.subplots(4, 1, figsize=(6.0, 9.0), sharex=True)
    ax = axes[0]
    ax.plot(cols["t"], cols["N_tot_chain"], label=r"$\mathcal{N}_{tot}$", color="tab:green")
    ax.axhline(cols["N_budget"][0], ls="--", color="k", lw=1, label="budget")
    ax.plot(cols["t"], cols["max_pk"], label=r"$\max_k p_k$", color="tab:red")
    ax.axhline(0.5, ls=":", color="tab:red", lw=1)
    ax.plot(cols["t"], cols["max_pb2"], label=r"$\max_b p_b^{(2)}$", color="tab:orange")
    ax.legend(frameon=False, ncol=2, fontsize=8)
    fig.colorbar(_heatmap(axes[1], t_p, probs, "site $p_k$"), ax=axes[1])
    fig.colorbar(_heatmap(axes[2], t_n, negs, r"site $\mathcal{N}_k$"), ax=axes[2])
    fig.colorbar(_heatmap(axes[3], t_b, blocks, r"block $\mathcal{N}_b^{(2)}$", cmap="magma"),
                 ax=axes[3])
    axes[3].set_xlabel("t")
    fig.tight_layout(rect=(0, 0.02, 1, 1))
    _finish(fig, spec)


def render_fig4(spec: FigureSpec) -> None:
    cols = load_table(spec.indir / "fig4_trajectory.csv")
    x = cols["t_over_T"]
    fig, (ax_sites, ax_tot) = plt.subplots(2, 1, figsize=(5.0, 5.0), sharex=True)
    ax_sites.plot(x, cols["N_A"], label=r"$\mathcal{N}_A$", color="tab:blue")
    ax_sites.plot(x, cols["N_B"], label=r"$\mathcal{N}_B$", color="tab:orange")
    ax_sites.set_ylabel("mode negativity")
    ax_sites.legend(frameon=False)
    ax_tot.plot(x, cols["N_tot"], color="tab:green", label=r"$\mathcal{N}_{tot}$")
    ax_tot.axhline(cols["N_budget"][0], ls="--", color="k", lw=1, label="budget")
    ax_tot.set_xlabel("t / T")
    ax_tot.set_ylabel("total vs budget")
    ax_tot.legend(frameon=False)
    fig.tight_layout(rect=(0, 0.02, 1, 1))
    _finish(fig, spec)


def render_fig5(spec: FigureSpec) -> None:
    cols = load_table(spec.indir / "fig5_seeds.csv", text_columns=("seed_label",))
    labels = sorted(set(cols["seed_label"]))
    fig, (ax_abs, ax_norm) = plt.subplots(1, 2, figsize=(9.0, 4.0), sharex=True)
    for label in labels:
        sel = cols["seed_label"] == label
        x = cols["t_over_T"][sel]
        ax_abs.plot(x, cols["N_tot_abs"][sel], label=label)
        ax_abs.axhline(cols["N_seed"][sel][0], ls=":", lw=0.8, color="0.5")
        ax_norm.plot(x, cols["N_tot_normalized"][sel], label=label)
    ax_abs.set_xlabel("t / T")
    ax_abs.set_ylabel(r"$\mathcal{N}_{tot}$")
    ax_norm.set_xlabel("t / T")
    ax_norm.set_ylabel(r"$\mathcal{N}_{tot} / \mathcal{N}_{seed}$")
    ax_norm.legend(frameon=False)
    fig.tight_layout(rect=(0, 0.03, 1, 1))
    _finish(fig, spec)


def render_damping(spec: FigureSpec) -> None:
    cols = load_table(spec.indir / "damping.csv")
    gammas = sorted(set(cols["gamma"]))
    fig, (ax_n, ax_eps) = plt.subplots(2, 1, figsize=(5.0, 5.5), sharex=True)
    for gamma in gammas:
        sel = cols["gamma"] == gamma
        ax_n.plot(cols["t"][sel], cols["N_tot_damped"][sel],
                  label=rf"$\gamma = {gamma:g}$")
        if gamma > 0:
            ax_eps.plot(cols["t"][sel], cols["epsilon"][sel],
                        label=rf"$\gamma = {gamma:g}$", color="tab:red")
    ax_n.set_ylabel(r"$\mathcal{N}_{tot}$")
    ax_n.legend(frameon=False)
    ax_eps.set_ylabel(r"$\epsilon(t)$")
    ax_eps.set_xlabel("t")
    fig.tight_layout(rect=(0, 0.02, 1, 1))
    _finish(fig, spec)


RENDERERS = {
    "fig1": render_fig1,
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "fig5": render_fig5,
    "damping": render_damping,
}


def render(spec: FigureSpec) -> None:
    RENDERERS[spec.fig](spec)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="negbudget-plots",
        description="Render figure analogues from negbudget CSV outputs",
    )
    parser.add_argument("--in", dest="indir", required=True, help="run directory with CSVs")
    parser.add_argument("--fig", required=True, choices=FIGURE_IDS)
    parser.add_argument("--out", required=True, help="output image path (PNG + SVG emitted)")
    args = parser.parse_args(argv)
    spec = FigureSpec(Path(args.indir), args.fig, Path(args.out))
    try:
        render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
