"""Numerical checks of the spectral-concentration inequalities on sampled graphs.

Each check returns a :class:`BoundReport` with the two sides of the
inequality and any auxiliary quantities.  Natural logarithms are used
throughout.  Degenerate parameters (p of 0 or 1, disconnected graphs) never
raise; they produce report-only rows with ``holds`` reflecting the raw
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graphgen import Graph, adjacency, degree_profile, laplacian
from .lambertw import ThresholdConstants
from .spectral import SpectralFlag, eig_sym, overlap_split, principal_vector

__all__ = [
    "BoundReport",
    "check_operator_deviation",
    "check_eigenvalue_bands",
    "check_degree_concentration",
    "alpha_lower_bound",
    "check_alpha_overlap",
    "dul_quantities",
    "infnorm_bound",
    "lambda1_band_probability",
    "check_laplacian_norm",
    "check_mu1_vs_maxdeg",
    "check_algebraic_connectivity",
    "degree_extremes_vs_lambert",
]

_HOLDS_SLACK = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance: holds iff lhs <= rhs + 1e-12."""

    name: str
    lhs: float
    rhs: float
    holds: bool
    aux: dict[str, float] = field(default_factory=dict)


def _report(name: str, lhs: float, rhs: float, aux: dict[str, float] | None = None) -> BoundReport:
    holds = bool(lhs <= rhs + _HOLDS_SLACK)  # NaN lhs compares False: report-only
    return BoundReport(name=name, lhs=float(lhs), rhs=float(rhs), holds=holds, aux=aux or {})


def _np_product(g: Graph) -> float:
    return g.n * g.p_nominal


def check_operator_deviation(g: Graph) -> BoundReport:
    """Spectral norm of A - E(A) against sqrt(8 np ln n), E(A) = p (J - I)."""
    n, p = g.n, g.p_nominal
    centered = adjacency(g) - p * (np.ones((n, n)) - np.eye(n))
    lhs = float(np.max(np.abs(np.linalg.eigvalsh(centered))))
    rhs = math.sqrt(8.0 * _np_product(g) * math.log(n)) if n > 1 else 0.0
    return _report("operator_deviation", lhs, rhs)


def check_eigenvalue_bands(g: Graph) -> tuple[BoundReport, BoundReport]:
    """|lambda_1 - np| and max_{i>=2} |lambda_i| against sqrt(8 np ln(sqrt(2) n))."""
    n = g.n
    vals = np.linalg.eigvalsh(adjacency(g))  # ascending
    lam1 = float(vals[-1])
    bulk = float(np.max(np.abs(vals[:-1]))) if n > 1 else 0.0
    rhs = math.sqrt(8.0 * _np_product(g) * math.log(math.sqrt(2.0) * n))
    aux = {"lambda1": lam1, "np": _np_product(g)}
    return (
        _report("lambda1_band", abs(lam1 - _np_product(g)), rhs, aux),
        _report("bulk_band", bulk, rhs, aux),
    )


def check_degree_concentration(g: Graph) -> BoundReport:
    """max_v |deg(v) - np| against 2 sqrt(ln(n) np (1-p))."""
    degrees, _, _ = degree_profile(g)
    n, p = g.n, g.p_nominal
    lhs = float(np.max(np.abs(degrees - _np_product(g))))
    rhs = 2.0 * math.sqrt(max(math.log(n), 0.0) * _np_product(g) * (1.0 - p))
    return _report("degree_concentration", lhs, rhs)


def alpha_lower_bound(n: int, p: float) -> float:
    """Concentration floor 1 - 16/sqrt(np/ln n) for the superposition overlap."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    ratio = n * p / math.log(n)
    if ratio <= 1.0:
        raise ValueError(f"need np > ln n, got np/ln n = {ratio!r}")
    return 1.0 - 16.0 / math.sqrt(ratio)


def check_alpha_overlap(g: Graph) -> BoundReport:
    """Measured superposition overlap of the principal adjacency eigenvector
    against the concentration floor; holds iff alpha >= floor.

    lhs = floor - alpha, rhs = 0.  Graphs outside the floor's domain or with
    a flagged principal vector produce report-only rows (NaN lhs).
    """
    try:
        floor = alpha_lower_bound(g.n, g.p_nominal)
    except ValueError:
        floor = math.nan
    try:
        alpha = overlap_split(principal_vector(eig_sym(adjacency(g)))).alpha
    except (SpectralFlag, ValueError):
        alpha = math.nan
    lhs = floor - alpha if math.isfinite(floor) and math.isfinite(alpha) else math.nan
    return _report("alpha_overlap", lhs, 0.0, {"alpha": alpha, "floor": floor})


def dul_quantities(n: int, p: float) -> tuple[float, float, int]:
    """The degree-ratio envelopes d <= 1 <= u and the power count l.

    d = (1 - 2 sqrt(ln n/np)) / (1 + 4 sqrt(ln n/np)), u mirrored, and
    l = ceil(ln n / ln(sqrt(np/ln n)/4)); requires sqrt(np/ln n) > 4.
    """
    x = math.sqrt(math.log(n) / (n * p))
    base = math.sqrt(n * p / math.log(n)) / 4.0
    if base <= 1.0:
        raise ValueError(f"need sqrt(np/ln n) > 4, got {4.0 * base!r}")
    d = (1.0 - 2.0 * x) / (1.0 + 4.0 * x)
    u = (1.0 + 2.0 * x) / (1.0 - 4.0 * x)
    l = math.ceil(math.log(n) / math.log(base))
    return d, u, int(l)


def infnorm_bound(n: int, p: float, c_const: float) -> float:
    """Closed-form deviation bound c (1/sqrt n) ln^{3/2}(n) / (sqrt(np) ln(np))."""
    if n * p <= 1.0:
        raise ValueError(f"need np > 1, got np = {n * p!r}")
    return c_const * math.log(n) ** 1.5 / (math.sqrt(n) * math.sqrt(n * p) * math.log(n * p))


def lambda1_band_probability(n: int, p: float, delta: float) -> float:
    """Chance that lambda_1(A/(np)) lies within delta of 1: 1 - erfc(n sqrt(p) delta / (2 sqrt(1-p)))."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"need 0 < p < 1, got {p!r}")
    if delta < 0.0:
        raise ValueError(f"need delta >= 0, got {delta!r}")
    return 1.0 - math.erfc(n * math.sqrt(p) * delta / (2.0 * math.sqrt(1.0 - p)))


def check_laplacian_norm(g: Graph, mu1_tol: float = 0.1) -> BoundReport:
    """|mu_1/np - 1| against a caller tolerance, with the centered-norm ratio in aux."""
    n, p = g.n, g.p_nominal
    lap = laplacian(g)
    mu1 = float(np.linalg.eigvalsh(lap)[-1])
    np_prod = _np_product(g)
    mu1_over_np = mu1 / np_prod if np_prod > 0.0 else math.nan
    denom_sq = 2.0 * np_prod * (1.0 - p) * math.log(n) if n > 1 else 0.0
    if denom_sq > 0.0:
        expected = np_prod * np.eye(n) - p * np.ones((n, n))
        centered = float(np.max(np.abs(np.linalg.eigvalsh(lap - expected))))
        ratio = centered / math.sqrt(denom_sq)
    else:
        ratio = math.nan
    lhs = abs(mu1_over_np - 1.0) if math.isfinite(mu1_over_np) else math.nan
    aux = {"mu1": mu1, "mu1_over_np": mu1_over_np, "centered_norm_ratio": ratio}
    return _report("laplacian_norm", lhs, mu1_tol, aux)


def check_mu1_vs_maxdeg(g: Graph, C: float = 3.0) -> BoundReport:
    """Sandwich Delta <= mu_1 <= Delta + C sqrt(np).

    The lower bound holds for every graph (canonical vectors give
    <v|L|v> = deg(v)); encoded as lhs = max(lower slack, upper slack) <= 0.
    """
    _, _, delta_max = degree_profile(g)
    mu1 = float(np.linalg.eigvalsh(laplacian(g))[-1])
    upper = delta_max + C * math.sqrt(max(_np_product(g), 0.0))
    lhs = max(delta_max - mu1, mu1 - upper)
    aux = {"mu1": mu1, "delta_max": float(delta_max), "upper": upper}
    return _report("mu1_vs_maxdeg", lhs, 0.0, aux)


def check_algebraic_connectivity(g: Graph, dev_max: float = 4.0) -> BoundReport:
    """|mu_{n-1} - np| / sqrt(np ln n) against a caller constant.

    Disconnected graphs report mu_{n-1} = 0 with a flag in aux and never hold.
    """
    vals = np.linalg.eigvalsh(laplacian(g))
    mu_n1 = float(vals[1]) if g.n > 1 else 0.0
    np_prod = _np_product(g)
    disconnected = mu_n1 <= 1e-9
    denom = math.sqrt(np_prod * math.log(g.n)) if g.n > 1 and np_prod > 0 else 0.0
    deviation = abs(mu_n1 - np_prod) / denom if denom > 0.0 else math.nan
    lhs = math.nan if disconnected else deviation
    aux = {
        "mu_n_minus_1": mu_n1,
        "deviation": deviation,
        "disconnected": 1.0 if disconnected else 0.0,
    }
    return _report("algebraic_connectivity", lhs, dev_max, aux)


def degree_extremes_vs_lambert(
    g: Graph,
    constants: ThresholdConstants,
    tol_max: float = 0.25,
    tol_min: float = 0.35,
) -> BoundReport:
    """Relative deviation of Delta/ln n from a and delta_min/ln n from b.

    lhs is the larger tolerance-normalized deviation, rhs = 1; aux carries
    the raw ratios for report-only use.
    """
    _, delta_min, delta_max = degree_profile(g)
    log_n = math.log(g.n)
    max_ratio = delta_max / log_n
    min_ratio = delta_min / log_n
    rel_max = abs(max_ratio - constants.a) / constants.a
    rel_min = abs(min_ratio - constants.b) / constants.b
    lhs = max(rel_max / tol_max, rel_min / tol_min)
    aux = {
        "delta_max_over_log": max_ratio,
        "delta_min_over_log": min_ratio,
        "a": constants.a,
        "b": constants.b,
        "rel_dev_max": rel_max,
        "rel_dev_min": rel_min,
    }
    return _report("degree_extremes_vs_lambert", lhs, 1.0, aux)
