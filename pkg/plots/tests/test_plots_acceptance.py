"""Acceptance check for the rendering component: figures regenerate
byte-identically from the same CSV inputs."""

import pytest

from negbudget.cli import main as sim_main
from negplots.render import main as plot_main


@pytest.fixture(scope="module")
def figure_runs(tmp_path_factory):
    root = tmp_path_factory.mktemp("accept_runs")
    jobs = {
        "fig1": ("two_body", ["two-body", "--times", "9", "--grid-points", "101"]),
        "fig3": ("chain", ["chain", "--sites", "3", "--times", "9", "--grid-points", "101"]),
        "fig5": ("seeds", ["seeds", "--times", "5", "--grid-points", "101", "--dim", "16"]),
    }
    dirs = {}
    for fig, (name, argv) in jobs.items():
        outdir = root / name
        assert sim_main(argv + ["--out", str(outdir)]) == 0
        dirs[fig] = outdir
    return dirs


def test_criterion_13_deterministic_rerender(figure_runs, tmp_path):
    for fig, indir in figure_runs.items():
        first = tmp_path / "a" / f"{fig}.png"
        second = tmp_path / "b" / f"{fig}.png"
        for out in (first, second):
            code = plot_main(["--in", str(indir), "--fig", fig, "--out", str(out)])
            assert code == 0, fig
        for suffix in (".png", ".svg"):
            a = first.with_suffix(suffix).read_bytes()
            b = second.with_suffix(suffix).read_bytes()
            assert a == b, f"{fig}{suffix} differs between renders"
    print("criterion 13 PASS: fig1/fig3/fig5 re-render byte-identical (PNG and SVG)")
