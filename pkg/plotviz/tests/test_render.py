"""Renderer tests, including the secondary acceptance checks.

The fixture CSVs come from real runs of the primary command-line tool
(miniature configurations), so these tests exercise the actual artifact
interface end to end.  The renderer itself never imports the primary
package.
"""

import json
import math
import subprocess
import sys

import pytest

from plotviz import SchemaError, render_fig1, render_fig2, render_scaling
from plotviz.csvio import read_trials
from plotviz.render_fig1 import main as fig1_main


def run_primary(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "qsearchlab.cli", *args],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def fig1_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig1")
    run_primary("fig1", "--p0-min", "1.1", "--p0-max", "10", "--points", "90",
                "--out", str(out))
    return out


@pytest.fixture(scope="module")
def fig2_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig2")
    run_primary("fig2", "--p0", "2", "--trials", "3", "--sizes", "16,24,32,48",
                "--seed", "5", "--out", str(out), "--quiet")
    return out


@pytest.fixture(scope="module")
def scaling_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("scaling")
    run_primary("infnorm-study", "--p", "0.5", "--sizes", "16,24,32",
                "--trials", "4", "--seed", "6", "--out", str(out), "--quiet")
    return out


def plain_median(values):
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def test_fig1_acceptance(fig1_dir, tmp_path):
    out = tmp_path / "fig1.svg"
    result = render_fig1(fig1_dir / "curve.csv", out)
    assert out.exists() and out.stat().st_size > 0
    assert result.points == 90
    # rendered endpoints echo the CSV values
    with open(fig1_dir / "curve.csv") as fh:
        rows = fh.read().strip().splitlines()[1:]
    first = tuple(float(tok) for tok in rows[0].split(","))
    last = tuple(float(tok) for tok in rows[-1].split(","))
    assert abs(result.first[0] - first[0]) <= 1e-6
    assert abs(result.first[1] - first[1]) <= 1e-6
    assert abs(result.last[1] - last[1]) <= 1e-6


def test_fig1_rejects_empty_curve(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("p0,p_bound\n")
    with pytest.raises(SchemaError):
        render_fig1(empty, tmp_path / "x.svg")


def test_fig1_rejects_wrong_schema(fig2_dir, tmp_path):
    with pytest.raises(SchemaError):
        render_fig1(fig2_dir / "summary.csv", tmp_path / "x.svg")


def test_fig2_acceptance(fig2_dir, tmp_path):
    out = tmp_path / "fig2.svg"
    result = render_fig2(fig2_dir / "summary.csv", fig2_dir / "manifest.json", out)
    assert out.exists() and out.stat().st_size > 0
    # 4 sizes -> 8 error bars (bound + measured per size) and one dashed line
    assert result.sizes == [16, 24, 32, 48]
    assert result.errorbar_count == 8
    manifest = json.loads((fig2_dir / "manifest.json").read_text())
    assert abs(result.dashed_y - manifest["p_bound_limit"]) <= 1e-9


def test_fig2_single_size_renders(fig2_dir, tmp_path):
    lines = (fig2_dir / "summary.csv").read_text().strip().splitlines()
    single = tmp_path / "single.csv"
    single.write_text("\n".join(lines[:2]) + "\n")
    result = render_fig2(single, fig2_dir / "manifest.json", tmp_path / "s.svg")
    assert result.errorbar_count == 2


def test_scaling_acceptance(scaling_dir, tmp_path):
    out = tmp_path / "scaling.svg"
    result = render_scaling(scaling_dir / "trials.csv", out)
    assert out.exists() and out.stat().st_size > 0
    assert result.sizes == [16, 24, 32]
    # renderer medians match an independent recomputation exactly
    rows = read_trials(scaling_dir / "trials.csv")
    for n, median in zip(result.sizes, result.medians):
        values = [r["infnorm_scaled"] for r in rows
                  if r["n"] == n and math.isfinite(r["infnorm_scaled"])]
        assert abs(median - plain_median(values)) <= 1e-12


def test_script_entry_points(fig1_dir, tmp_path):
    out = tmp_path / "cli.svg"
    assert fig1_main(["--input", str(fig1_dir / "curve.csv"), "--output", str(out)]) == 0
    assert out.exists()
    assert fig1_main(["--input", str(fig1_dir / "manifest.json"),
                      "--output", str(out)]) == 1
