"""Figure renderers.  Vector (SVG) output by default; inputs are never mutated."""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .csvio import SchemaError, read_curve, read_summary, read_trials


@dataclass(frozen=True)
class Fig1Result:
    out_path: str
    points: int
    first: tuple[float, float]
    last: tuple[float, float]


@dataclass(frozen=True)
class Fig2Result:
    out_path: str
    sizes: list[int]
    errorbar_count: int  # bars actually drawn: 2 series x len(sizes)
    dashed_y: float


@dataclass(frozen=True)
class ScalingResult:
    out_path: str
    sizes: list[int]
    medians: list[float]


def render_fig1(curve_csv, out_path) -> Fig1Result:
    """Line plot of the success-probability lower bound versus p0."""
    curve = read_curve(curve_csv)
    if not curve:
        raise SchemaError(f"{curve_csv}: curve file has no data rows")
    xs = [p0 for p0, _ in curve]
    ys = [pb for _, pb in curve]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, color="tab:blue")
    ax.set_xlabel(r"$p_0$  (edge probability scale $p = p_0 \log(n)/n$)")
    ax.set_ylabel("success probability lower bound")
    ax.set_ylim(0.0, 1.0)
    fig.tight_layout()
    fig.savefig(out_path)
    line = ax.lines[0]
    data = line.get_xydata()
    plt.close(fig)
    return Fig1Result(
        out_path=str(out_path),
        points=len(data),
        first=(float(data[0][0]), float(data[0][1])),
        last=(float(data[-1][0]), float(data[-1][1])),
    )


def render_fig2(summary_csv, manifest_json, out_path) -> Fig2Result:
    """Per-size error bars of the bound and of the measured success
    probability, with a dashed horizontal line at the limit bound read from
    the campaign manifest."""
    rows = read_summary(summary_csv)
    if not rows:
        raise SchemaError(f"{summary_csv}: summary file has no data rows")
    with open(manifest_json) as fh:
        manifest = json.load(fh)
    if "p_bound_limit" not in manifest:
        raise SchemaError(f"{manifest_json}: manifest lacks the p_bound_limit sidecar")
    limit = float(manifest["p_bound_limit"])

    sizes = [row["n"] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for key, color, label in (
        ("bound", "tab:blue", "gap bound (1-c)/(1+c)"),
        ("p", "black", "measured success probability"),
    ):
        means = [row[f"{key}_mean"] for row in rows]
        lower = [row[f"{key}_mean"] - row[f"{key}_min"] for row in rows]
        upper = [row[f"{key}_max"] - row[f"{key}_mean"] for row in rows]
        ax.errorbar(
            sizes, means, yerr=[lower, upper], fmt="o", capsize=4.0,
            color=color, label=label,
        )
    ax.axhline(limit, color="tab:red", linestyle="--", label="limit bound")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("graph size n")
    ax.set_ylabel("probability")
    ax.set_ylim(0.0, 1.05)
    ax.legend(loc="center right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    bar_count = sum(
        len(container[0].get_xdata()) for container in ax.containers
    )
    dashed = [ln for ln in ax.lines if ln.get_linestyle() == "--"]
    dashed_y = float(dashed[0].get_ydata()[0])
    plt.close(fig)
    return Fig2Result(
        out_path=str(out_path), sizes=sizes, errorbar_count=bar_count, dashed_y=dashed_y
    )


def render_scaling(trials_csv, out_path) -> ScalingResult:
    """Log-log medians of the scaled eigenvector deviation versus n."""
    rows = read_trials(trials_csv)
    if not rows:
        raise SchemaError(f"{trials_csv}: trials file has no data rows")
    by_size: dict[int, list[float]] = {}
    for row in rows:
        value = row["infnorm_scaled"]
        if math.isfinite(value):
            by_size.setdefault(row["n"], []).append(value)
    if not by_size:
        raise SchemaError(f"{trials_csv}: no finite deviation values to plot")
    sizes = sorted(by_size)
    medians = [statistics.median(by_size[n]) for n in sizes]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(sizes, medians, "o-", color="tab:blue")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("graph size n")
    ax.set_ylabel(r"median of $\sqrt{n}\,\Vert\lambda_1 - s\Vert_\infty$")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return ScalingResult(out_path=str(out_path), sizes=sizes, medians=medians)
