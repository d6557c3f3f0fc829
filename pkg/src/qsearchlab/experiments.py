"""Seeded Monte-Carlo campaigns with persistent CSV/JSON results.

Every trial derives its own seed from a stable 64-bit hash of
(master_seed, n, trial_index, label), so results are identical whatever
the execution order or degree of parallelism.  Trials that hit a math
failure (no calibration root, flagged principal vector, ...) are recorded
as flagged rows; campaigns never abort on them.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ._version import __version__
from .graphgen import Graph, adjacency, degree_profile, is_connected, sample_gnp
from .lambertw import ThresholdConstants, p_bound, threshold_constants
from .search import (
    CalibrationError,
    GapError,
    MatrixKind,
    SearchSetup,
    assemble_hamiltonian,
    calibrate_r_empirical,
    calibrate_r_eq3,
    peak_scan,
    search_matrix,
    spectral_gap_c,
    success_probability,
)
from .spectral import (
    SpectralFlag,
    eig_sym,
    infnorm_deviation,
    principal_vector,
    standardized_lambda1,
)

__all__ = [
    "CampaignConfig",
    "TrialRecord",
    "SummaryRow",
    "Lambda1Summary",
    "CsvFormatError",
    "derive_seed",
    "run_campaign",
    "aggregate",
    "figure1_curve",
    "lambda1_distribution_study",
    "summarize_z",
    "write_trials_csv",
    "read_trials_csv",
    "write_summary_csv",
    "read_summary_csv",
    "write_curve_csv",
    "read_curve_csv",
    "write_bounds_csv",
    "read_bounds_csv",
    "write_manifest",
    "PEAK_SCAN_STEPS",
    "PEAK_WINDOW_FACTOR",
]

PEAK_SCAN_STEPS = 513
PEAK_WINDOW_FACTOR = 4.0  # peaks are searched on [0, 4 sqrt(n)]

_CALIBRATIONS = ("none", "eq3", "empirical")


class CsvFormatError(ValueError):
    """Malformed results file; the message carries the offending line number."""


def derive_seed(master_seed: int, n: int, trial_index: int, label: str = "graph") -> int:
    """Stable 64-bit stream seed hashed from (master_seed, n, trial_index, label)."""
    payload = f"{master_seed}:{n}:{trial_index}:{label}".encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


@dataclass(frozen=True)
class CampaignConfig:
    """One campaign: sizes x trials with a p rule, matrix kind, and calibration mode.

    Exactly one of ``p_fixed`` (constant edge probability) or ``p0``
    (p = p0 ln(n)/n) must be set.  ``t_factor`` fixes the measurement time
    t = t_factor * sqrt(n).
    """

    sizes: tuple[int, ...]
    trials_per_size: int
    kind: MatrixKind
    master_seed: int
    p_fixed: float | None = None
    p0: float | None = None
    calibration: str = "empirical"
    t_factor: float = math.pi / 2.0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.trials_per_size < 1:
            raise ValueError("trials_per_size must be >= 1")
        if not self.sizes or any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be nonempty and strictly increasing")
        if (self.p_fixed is None) == (self.p0 is None):
            raise ValueError("set exactly one of p_fixed or p0")
        if self.calibration not in _CALIBRATIONS:
            raise ValueError(f"calibration must be one of {_CALIBRATIONS}")
        if self.kind is MatrixKind.LAPLACIAN_THRESHOLD and self.p0 is None:
            raise ValueError("threshold matrix kind needs the p0 rule")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def p_for_size(self, n: int) -> float:
        if self.p_fixed is not None:
            return self.p_fixed
        return min(self.p0 * math.log(n) / n, 1.0)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["sizes"] = list(self.sizes)
        return d


@dataclass(frozen=True)
class TrialRecord:
    """One row of a campaign: per-graph outcomes plus provenance."""

    n: int
    p: float
    trial_index: int
    seed: int
    connected: bool
    delta_min: int
    delta_max: int
    lambda1_normalized: float
    c: float
    r: float
    bound: float
    p_at_t: float
    p_peak: float
    t_peak: float
    infnorm_scaled: float
    marked_vertex: int
    status: str


@dataclass(frozen=True)
class SummaryRow:
    n: int
    bound_min: float
    bound_max: float
    bound_mean: float
    p_min: float
    p_max: float
    p_mean: float


@dataclass(frozen=True)
class Lambda1Summary:
    n: int
    p: float
    trials: int
    mean_z: float
    sd_z: float
    ks_distance: float


def _run_trial(
    cfg: CampaignConfig, n: int, trial_index: int, constants: ThresholdConstants | None
) -> TrialRecord:
    p = cfg.p_for_size(n)
    seed = derive_seed(cfg.master_seed, n, trial_index, "graph")
    g = sample_gnp(n, p, seed)
    w_rng = np.random.default_rng(derive_seed(cfg.master_seed, n, trial_index, "vertex"))
    w = int(w_rng.integers(n))

    _, delta_min, delta_max = degree_profile(g)
    connected = is_connected(g)
    flags: list[str] = []

    m = search_matrix(g, cfg.kind, constants)
    base = eig_sym(m)
    lambda1 = float(base.eigenvalues[0])
    try:
        c = spectral_gap_c(base)
    except GapError:
        c = math.nan
        flags.append("gap_error")
    bound = (1.0 - c) / (1.0 + c) if math.isfinite(c) else math.nan

    t_window = PEAK_WINDOW_FACTOR * math.sqrt(n)
    r = 0.0
    if cfg.calibration != "none":
        # c within float noise of 1 (degenerate leading pair, e.g. a
        # disconnected graph) would blow the admissible interval up to ~1/eps
        if not math.isfinite(c) or c >= 1.0 - 1e-9:
            flags.append("calibration_skipped")
        elif cfg.calibration == "eq3":
            try:
                r = calibrate_r_eq3(base, w)
            except CalibrationError:
                r = calibrate_r_empirical(base, w, t_max=t_window)
                flags.append("eq3_fallback")
        else:
            r = calibrate_r_empirical(base, w, t_max=t_window)

    m_frame = m / lambda1 if lambda1 > 0.0 else m
    ham = assemble_hamiltonian(m_frame, r, w)
    setup = SearchSetup(
        graph=g,
        kind=cfg.kind,
        r=r,
        w=w,
        base_spectrum=base,
        hamiltonian_spectrum=ham,
        normalized=lambda1 > 0.0,
    )
    t_meas = cfg.t_factor * math.sqrt(n)
    p_at_t = success_probability(setup, t_meas)
    t_peak, p_peak = peak_scan(setup, t_window, PEAK_SCAN_STEPS)
    if p_at_t > p_peak:  # measurement time is a legitimate scan candidate
        t_peak, p_peak = t_meas, p_at_t

    try:
        vec = principal_vector(base)
        infnorm_scaled = math.sqrt(n) * infnorm_deviation(vec, n)
    except SpectralFlag:
        infnorm_scaled = math.nan
        flags.append("principal_flagged")

    return TrialRecord(
        n=n,
        p=p,
        trial_index=trial_index,
        seed=seed,
        connected=connected,
        delta_min=delta_min,
        delta_max=delta_max,
        lambda1_normalized=lambda1,
        c=c,
        r=r,
        bound=bound,
        p_at_t=p_at_t,
        p_peak=p_peak,
        t_peak=t_peak,
        infnorm_scaled=infnorm_scaled,
        marked_vertex=w,
        status="+".join(flags) if flags else "ok",
    )


def run_campaign(cfg: CampaignConfig, progress=None) -> list[TrialRecord]:
    """All (size, trial) records, merged in (n, trial_index) order.

    Workers only speed things up; the output is identical for any thread
    count because every trial is pure and independently seeded.  The
    optional ``progress`` callable receives each record as it completes.
    """
    constants = (
        threshold_constants(cfg.p0) if cfg.kind is MatrixKind.LAPLACIAN_THRESHOLD else None
    )
    tasks = [(n, i) for n in cfg.sizes for i in range(cfg.trials_per_size)]
    records = []
    if cfg.threads == 1:
        for n, i in tasks:
            rec = _run_trial(cfg, n, i, constants)
            if progress is not None:
                progress(rec)
            records.append(rec)
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            for rec in pool.map(lambda t: _run_trial(cfg, t[0], t[1], constants), tasks):
                if progress is not None:
                    progress(rec)
                records.append(rec)
    return sorted(records, key=lambda rec: (rec.n, rec.trial_index))


def aggregate(records: list[TrialRecord]) -> list[SummaryRow]:
    """Per-size min/max/mean of the bound and of the measured success probability."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    by_size: dict[int, list[TrialRecord]] = {}
    for rec in records:
        by_size.setdefault(rec.n, []).append(rec)
    rows = []
    for n in sorted(by_size):
        group = by_size[n]
        bounds = [rec.bound for rec in group]
        probs = [rec.p_at_t for rec in group]
        rows.append(
            SummaryRow(
                n=n,
                bound_min=min(bounds),
                bound_max=max(bounds),
                bound_mean=statistics.fmean(bounds),
                p_min=min(probs),
                p_max=max(probs),
                p_mean=statistics.fmean(probs),
            )
        )
    return rows


def figure1_curve(p0_grid: list[float]) -> list[tuple[float, float]]:
    """(p0, p_bound(p0)) pairs; rejects any p0 <= 1."""
    for p0 in p0_grid:
        if p0 <= 1.0:
            raise ValueError(f"curve needs p0 > 1, got {p0!r}")
    return [(float(p0), p_bound(p0)) for p0 in p0_grid]


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _ks_distance_vs_normal(zs: list[float]) -> float:
    n = len(zs)
    cdf = np.array([_normal_cdf(z) for z in sorted(zs)])
    upper = np.max(np.arange(1, n + 1) / n - cdf)
    lower = np.max(cdf - np.arange(0, n) / n)
    return float(max(upper, lower))


def summarize_z(zs: list[float]) -> tuple[float, float, float]:
    """(mean, sample sd, Kolmogorov-Smirnov distance vs the standard normal)."""
    mean = statistics.fmean(zs)
    sd = statistics.stdev(zs) if len(zs) > 1 else 0.0
    return mean, sd, _ks_distance_vs_normal(zs)


def lambda1_distribution_study(
    n: int, p: float, trials: int, master_seed: int
) -> Lambda1Summary:
    """Z-scores of the leading adjacency eigenvalue over seeded samples."""
    if trials < 30:
        raise ValueError(f"need at least 30 trials, got {trials}")
    zs = []
    for i in range(trials):
        g = sample_gnp(n, p, derive_seed(master_seed, n, i, "graph"))
        lam1 = float(np.linalg.eigvalsh(adjacency(g))[-1]) / (n * p)
        zs.append(standardized_lambda1(n, p, lam1))
    mean_z, sd_z, ks = summarize_z(zs)
    return Lambda1Summary(n=n, p=p, trials=trials, mean_z=mean_z, sd_z=sd_z, ks_distance=ks)


# ---------------------------------------------------------------------------
# CSV / JSON persistence.  Comma-separated, header row, '.' decimal, LF
# newlines; floats use repr so round-trips are exact.

TRIALS_COLUMNS = [
    "n", "p", "trial_index", "seed", "connected", "delta_min", "delta_max",
    "lambda1_normalized", "c", "r", "bound", "p_at_t", "p_peak", "t_peak",
    "infnorm_scaled", "marked_vertex", "status",
]
SUMMARY_COLUMNS = ["n", "bound_min", "bound_max", "bound_mean", "p_min", "p_max", "p_mean"]
CURVE_COLUMNS = ["p0", "p_bound"]
BOUNDS_COLUMNS = ["n", "p", "seed", "name", "lhs", "rhs", "holds", "aux"]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))  # plain-float repr even for numpy scalars
    return str(value)


def _parse_bool(token: str) -> bool:
    if token == "true":
        return True
    if token == "false":
        return False
    raise ValueError(f"expected true/false, got {token!r}")


def _write_rows(path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _read_rows(path, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}:1: missing header row") from None
        if got != header:
            raise CsvFormatError(f"{path}:1: bad header {got!r}")
        out = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise CsvFormatError(
                    f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}"
                )
            out.append((line_no, row))
    return out


def write_trials_csv(records: list[TrialRecord], path) -> None:
    rows = [
        [
            rec.n, rec.p, rec.trial_index, rec.seed, rec.connected, rec.delta_min,
            rec.delta_max, rec.lambda1_normalized, rec.c, rec.r, rec.bound,
            rec.p_at_t, rec.p_peak, rec.t_peak, rec.infnorm_scaled,
            rec.marked_vertex, rec.status,
        ]
        for rec in records
    ]
    _write_rows(path, TRIALS_COLUMNS, rows)


def read_trials_csv(path) -> list[TrialRecord]:
    records = []
    for line_no, row in _read_rows(path, TRIALS_COLUMNS):
        try:
            records.append(
                TrialRecord(
                    n=int(row[0]), p=float(row[1]), trial_index=int(row[2]),
                    seed=int(row[3]), connected=_parse_bool(row[4]),
                    delta_min=int(row[5]), delta_max=int(row[6]),
                    lambda1_normalized=float(row[7]), c=float(row[8]), r=float(row[9]),
                    bound=float(row[10]), p_at_t=float(row[11]), p_peak=float(row[12]),
                    t_peak=float(row[13]), infnorm_scaled=float(row[14]),
                    marked_vertex=int(row[15]), status=row[16],
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"{path}:{line_no}: {exc}") from exc
    return records


def write_summary_csv(rows: list[SummaryRow], path) -> None:
    _write_rows(
        path,
        SUMMARY_COLUMNS,
        [[r.n, r.bound_min, r.bound_max, r.bound_mean, r.p_min, r.p_max, r.p_mean] for r in rows],
    )


def read_summary_csv(path) -> list[SummaryRow]:
    rows = []
    for line_no, row in _read_rows(path, SUMMARY_COLUMNS):
        try:
            rows.append(
                SummaryRow(
                    n=int(row[0]), bound_min=float(row[1]), bound_max=float(row[2]),
                    bound_mean=float(row[3]), p_min=float(row[4]), p_max=float(row[5]),
                    p_mean=float(row[6]),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"{path}:{line_no}: {exc}") from exc
    return rows


def write_curve_csv(pairs: list[tuple[float, float]], path) -> None:
    _write_rows(path, CURVE_COLUMNS, [[p0, pb] for p0, pb in pairs])


def read_curve_csv(path) -> list[tuple[float, float]]:
    pairs = []
    for line_no, row in _read_rows(path, CURVE_COLUMNS):
        try:
            pairs.append((float(row[0]), float(row[1])))
        except ValueError as exc:
            raise CsvFormatError(f"{path}:{line_no}: {exc}") from exc
    return pairs


def write_bounds_csv(rows: list[tuple[int, float, int, "BoundReport"]], path) -> None:
    """Rows are (n, p, seed, report) tuples; aux is embedded as compact JSON."""
    out = []
    for n, p, seed, report in rows:
        aux = json.dumps(report.aux, sort_keys=True, separators=(",", ":"))
        out.append([n, p, seed, report.name, report.lhs, report.rhs, report.holds, aux])
    _write_rows(path, BOUNDS_COLUMNS, out)


def read_bounds_csv(path) -> list[dict]:
    rows = []
    for line_no, row in _read_rows(path, BOUNDS_COLUMNS):
        try:
            rows.append(
                {
                    "n": int(row[0]), "p": float(row[1]), "seed": int(row[2]),
                    "name": row[3], "lhs": float(row[4]), "rhs": float(row[5]),
                    "holds": _parse_bool(row[6]), "aux": json.loads(row[7]),
                }
            )
        except ValueError as exc:
            raise CsvFormatError(f"{path}:{line_no}: {exc}") from exc
    return rows


def write_manifest(path, cfg: CampaignConfig | dict, extras: dict | None = None) -> None:
    """Campaign sidecar: config echo, tool version, timestamp, master seed."""
    config = cfg.as_dict() if isinstance(cfg, CampaignConfig) else dict(cfg)
    manifest = {
        "tool": "qsearchlab",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "master_seed": config.get("master_seed"),
        "config": config,
    }
    if extras:
        manifest.update(extras)
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
