"""Search Hamiltonians, jump-parameter calibration, and time evolution.

The Hamiltonian is H = (1+r) M + |w><w| for a graph matrix M, a marked
vertex w, and a scalar jump parameter r.  Evolution is spectral: with
H = sum_k theta_k |u_k><u_k|, the state at time t is
sum_k exp(-i theta_k t) |u_k><u_k|s>, so a single dense eigendecomposition
gives amplitudes at every t.

By default M is rescaled by its measured leading eigenvalue before H is
assembled, so the frame in which the admissible interval
r in [-c/(1+c), c/(1-c)] is stated holds exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graphgen import Graph, adjacency, laplacian
from .lambertw import ThresholdConstants
from .spectral import SpectralDecomposition, eig_sym, equal_superposition

__all__ = [
    "MatrixKind",
    "SearchSetup",
    "EvolutionSample",
    "GapError",
    "CalibrationError",
    "search_matrix",
    "threshold_gap_c",
    "spectral_gap_c",
    "assemble_hamiltonian",
    "build_setup",
    "evolve",
    "amplitude_series",
    "evolution_samples",
    "success_probability",
    "predicted_probability",
    "peak_scan",
    "calibrate_r_eq3",
    "calibrate_r_empirical",
]


class GapError(RuntimeError):
    """Leading eigenvalue is non-positive; the normalized frame is undefined."""


class CalibrationError(RuntimeError):
    """No admissible jump parameter could be certified."""


class MatrixKind(enum.Enum):
    """Graph matrix driving the walk."""

    ADJACENCY_NORMALIZED = "adjacency"  # A / (n p)
    LAPLACIAN_COMPLEMENT = "laplacian"  # I - L / (n p)
    LAPLACIAN_THRESHOLD = "laplacian-threshold"  # I - 2 L / ((a + b) ln n)


@dataclass(frozen=True, eq=False)
class SearchSetup:
    """Immutable bundle of one assembled search instance."""

    graph: Graph
    kind: MatrixKind
    r: float
    w: int
    base_spectrum: SpectralDecomposition
    hamiltonian_spectrum: SpectralDecomposition
    normalized: bool


@dataclass(frozen=True)
class EvolutionSample:
    t: float
    amplitude: complex
    probability: float


def search_matrix(
    g: Graph, kind: MatrixKind, constants: ThresholdConstants | None = None
) -> np.ndarray:
    """The dense graph matrix for the requested kind, using nominal n*p scaling."""
    if kind is MatrixKind.ADJACENCY_NORMALIZED:
        if g.p_nominal <= 0.0:
            raise ValueError("adjacency normalization needs p_nominal > 0")
        return adjacency(g) / (g.n * g.p_nominal)
    if kind is MatrixKind.LAPLACIAN_COMPLEMENT:
        if g.p_nominal <= 0.0:
            raise ValueError("Laplacian normalization needs p_nominal > 0")
        return np.eye(g.n) - laplacian(g) / (g.n * g.p_nominal)
    if kind is MatrixKind.LAPLACIAN_THRESHOLD:
        if constants is None:
            raise ValueError("threshold kind needs ThresholdConstants")
        if g.n < 3:
            raise ValueError("threshold scaling needs n >= 3")
        scale = (constants.a + constants.b) * math.log(g.n)
        return np.eye(g.n) - 2.0 * laplacian(g) / scale
    raise ValueError(f"unknown matrix kind {kind!r}")


def threshold_gap_c(constants: ThresholdConstants) -> float:
    """Limit gap parameter (a-b)/(a+b) of the threshold-scaled Laplacian matrix."""
    return (constants.a - constants.b) / (constants.a + constants.b)


def spectral_gap_c(d: SpectralDecomposition) -> float:
    """max(|lambda_2|, |lambda_n|) / lambda_1; raises GapError when lambda_1 <= 0."""
    lam = d.eigenvalues
    if lam[0] <= 0.0:
        raise GapError(f"leading eigenvalue is not positive: {lam[0]!r}")
    if lam.shape[0] == 1:
        return 0.0
    return float(max(abs(lam[1]), abs(lam[-1])) / lam[0])


def assemble_hamiltonian(m: np.ndarray, r: float, w: int) -> SpectralDecomposition:
    """Decomposition of (1+r) m + |w><w|."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    if not 0 <= w < n:
        raise ValueError(f"marked vertex {w} out of range for n={n}")
    h = (1.0 + r) * m
    h[w, w] += 1.0
    return eig_sym(h)


def build_setup(
    g: Graph,
    kind: MatrixKind,
    w: int,
    *,
    r: float = 0.0,
    constants: ThresholdConstants | None = None,
    normalize: bool = True,
) -> SearchSetup:
    """Assemble the full search instance for a graph, matrix kind, and marked vertex."""
    m = search_matrix(g, kind, constants)
    base = eig_sym(m)
    if normalize:
        lam1 = float(base.eigenvalues[0])
        if lam1 <= 0.0:
            raise GapError(f"cannot normalize: leading eigenvalue {lam1!r}")
        m = m / lam1
    ham = assemble_hamiltonian(m, r, w)
    return SearchSetup(
        graph=g,
        kind=kind,
        r=float(r),
        w=int(w),
        base_spectrum=base,
        hamiltonian_spectrum=ham,
        normalized=normalize,
    )


def evolve(
    h: SpectralDecomposition, t: float, initial: np.ndarray | None = None
) -> np.ndarray:
    """State at time t from the equal superposition (or a supplied initial state)."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t!r}")
    psi0 = equal_superposition(h.n) if initial is None else np.asarray(initial)
    u = h.eigenvectors
    phases = np.exp(-1j * h.eigenvalues * t)
    return u @ (phases * (u.T @ psi0))


def _mode_coefficients(
    h: SpectralDecomposition, w: int, initial: np.ndarray | None = None
) -> np.ndarray:
    """c_k = <w|u_k><u_k|s>, so the amplitude is sum_k c_k exp(-i theta_k t)."""
    psi0 = equal_superposition(h.n) if initial is None else np.asarray(initial)
    return h.eigenvectors[w, :] * (h.eigenvectors.T @ psi0)


def amplitude_series(
    h: SpectralDecomposition, w: int, ts: np.ndarray, initial: np.ndarray | None = None
) -> np.ndarray:
    """<w|psi_t> for every t in ts, in one vectorized pass."""
    coeffs = _mode_coefficients(h, w, initial)
    ts = np.asarray(ts, dtype=float)
    return np.exp(-1j * np.outer(ts, h.eigenvalues)) @ coeffs


def evolution_samples(setup: SearchSetup, ts: np.ndarray) -> list[EvolutionSample]:
    amps = amplitude_series(setup.hamiltonian_spectrum, setup.w, ts)
    return [
        EvolutionSample(t=float(t), amplitude=complex(a), probability=float(abs(a) ** 2))
        for t, a in zip(ts, amps)
    ]


def success_probability(setup: SearchSetup, t: float) -> float:
    """P_w(t) = |<w|psi_t>|^2 for the assembled instance."""
    amp = amplitude_series(setup.hamiltonian_spectrum, setup.w, np.array([t]))[0]
    return float(abs(amp) ** 2)


def predicted_probability(delta: float, n: int, t: float) -> float:
    """Closed-form approximation of P_w(t) given |lambda_1 - 1| <= delta."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    amp = 1.0 / (1.0 + n * delta * delta / 4.0)
    freq = math.sqrt(delta * delta / 4.0 + 1.0 / n)
    return amp * math.sin(freq * t) ** 2


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Deterministic golden-section maximization; returns the best probe (x, f(x))."""
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    steps = int(math.ceil(math.log(tol / h) / math.log(_INVPHI)))
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc = f(c)
    yd = f(d)
    best_x, best_y = (c, yc) if yc >= yd else (d, yd)
    for _ in range(max(steps - 1, 0)):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= _INVPHI
            c = a + _INVPHI2 * h
            yc = f(c)
            if yc > best_y:
                best_x, best_y = c, yc
        else:
            a, c, yc = c, d, yd
            h *= _INVPHI
            d = a + _INVPHI * h
            yd = f(d)
            if yd > best_y:
                best_x, best_y = d, yd
    return best_x, best_y


def peak_scan(setup: SearchSetup, t_max: float, steps: int) -> tuple[float, float]:
    """(t*, P*) maximizing success probability on [0, t_max]: uniform grid
    plus golden-section refinement around the best grid point.  Flat curves
    return the smallest grid time."""
    if steps < 2:
        raise ValueError(f"need steps >= 2, got {steps}")
    if t_max <= 0.0:
        raise ValueError(f"need t_max > 0, got {t_max!r}")
    ts = np.linspace(0.0, t_max, steps)
    probs = np.abs(amplitude_series(setup.hamiltonian_spectrum, setup.w, ts)) ** 2
    # earliest grid point within noise of the max, so flat curves yield t = 0
    i = int(np.argmax(probs >= float(np.max(probs)) - 1e-12))
    t_grid, p_grid = float(ts[i]), float(probs[i])
    lo = float(ts[max(i - 1, 0)])
    hi = float(ts[min(i + 1, steps - 1)])
    if hi <= lo:
        return t_grid, p_grid

    def prob(t: float) -> float:
        return success_probability(setup, t)

    t_ref, p_ref = _golden_max(prob, lo, hi, tol=max((hi - lo) * 1e-6, 1e-12))
    if p_ref > p_grid:
        return float(t_ref), float(p_ref)
    return t_grid, p_grid


def _admissible_interval(c: float) -> tuple[float, float]:
    if not 0.0 <= c < 1.0:
        raise CalibrationError(f"gap parameter must satisfy 0 <= c < 1, got {c!r}")
    return -c / (1.0 + c), c / (1.0 - c)


def calibrate_r_eq3(
    base: SpectralDecomposition, w: int, *, residual_tol: float = 1e-10
) -> float:
    """Solve sum_{i>=2} q_i / ((1+r) lambda_i - r) = sum_{i>=2} q_i for r.

    q_i = |<w|lambda_i>|^2 and the eigenvalues are first rescaled so
    lambda_1 = 1.  The equation has a pole at r = lambda_i/(1 - lambda_i)
    for each bulk eigenvalue, so every pole-free sub-interval of the
    admissible range [-c/(1+c), c/(1-c)] is searched, nearest to r = 0
    first.  Returns a residual-certified root or raises
    :class:`CalibrationError`; it never extrapolates.
    """
    lam1 = float(base.eigenvalues[0])
    if lam1 <= 0.0:
        raise GapError(f"leading eigenvalue is not positive: {lam1!r}")
    lam = base.eigenvalues[1:] / lam1
    c = spectral_gap_c(base)
    lo, hi = _admissible_interval(c)
    q = base.eigenvectors[w, 1:] ** 2
    q_total = float(q.sum())
    if q_total <= 0.0:
        return 0.0  # marked vertex aligned with the leading eigenvector

    def residual(r: float) -> float:
        return float(np.sum(q / ((1.0 + r) * lam - r)) - q_total)

    poles = lam / (1.0 - lam)
    inner = np.unique(poles[(poles > lo) & (poles < hi)])
    breakpoints = np.concatenate(([lo], inner, [hi]))
    gaps = list(zip(breakpoints[:-1], breakpoints[1:]))

    def distance_from_zero(gap: tuple[float, float]) -> float:
        a, b = gap
        if a <= 0.0 <= b:
            return 0.0
        return min(abs(a), abs(b))

    gaps.sort(key=distance_from_zero)
    for a, b in gaps:
        width = b - a
        if width < 1e-13:
            continue
        pad = width * 1e-9
        x0, x1 = a + pad, b - pad
        f0, f1 = residual(x0), residual(x1)
        if f0 == 0.0:
            root = x0
        elif f1 == 0.0:
            root = x1
        elif f0 * f1 < 0.0:
            for _ in range(200):
                mid = 0.5 * (x0 + x1)
                if mid <= x0 or mid >= x1:
                    break
                fm = residual(mid)
                if fm == 0.0:
                    break
                if f0 * fm < 0.0:
                    x1, f1 = mid, fm
                else:
                    x0, f0 = mid, fm
            root = 0.5 * (x0 + x1)
        else:
            continue
        if abs(residual(root)) <= residual_tol * q_total:
            return float(root)
    raise CalibrationError("no root in admissible interval")


def _rank_one_peak(
    d: np.ndarray, y: np.ndarray, s_coeffs: np.ndarray, ts: np.ndarray
) -> float:
    """Peak of |<w|exp(-i C t)|s>|^2 over ts for C = diag(d) + y y^T.

    Eigenvalues come from LAPACK; the mode coefficients come from the
    rank-one resolvent identity, which costs O(n^2) instead of a full
    eigenvector solve.  Falls back to the direct decomposition whenever the
    identity is numerically unsafe (near-degenerate d or tiny couplings).
    """
    c_mat = np.diag(d) + np.outer(y, y)
    theta = np.linalg.eigvalsh(c_mat)
    t0_amp = float(y @ s_coeffs)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / (d[:, None] - theta[None, :])
        y2 = y * y
        s1 = y2 @ inv
        s2 = (y * s_coeffs) @ inv
        s3 = y2 @ (inv * inv)
        coeffs = s1 * s2 / s3
        weights = s1 * s1 / s3
    ok = (
        np.all(np.isfinite(coeffs))
        and np.all(np.isfinite(weights))
        and abs(float(coeffs.sum()) - t0_amp) <= 1e-8
        and abs(float(weights.sum()) - 1.0) <= 1e-6
    )
    if not ok:
        theta_full, q = np.linalg.eigh(c_mat)
        theta = theta_full
        coeffs = (q.T @ y) * (q.T @ s_coeffs)
    amps = np.exp(-1j * np.outer(ts, theta)) @ coeffs
    return float(np.max(np.abs(amps) ** 2))


def calibrate_r_empirical(
    base: SpectralDecomposition,
    w: int,
    *,
    t_max: float,
    grid_points: int = 17,
    t_steps: int = 257,
    tol_fraction: float = 1e-3,
) -> float:
    """Jump parameter maximizing the success-probability peak over [0, t_max].

    Deterministic: a uniform bootstrap grid over the admissible interval
    (17 points by default) followed by golden-section refinement around the
    best grid point.  The base matrix is used in the rescaled lambda_1 = 1
    frame.
    """
    lam1 = float(base.eigenvalues[0])
    if lam1 <= 0.0:
        raise GapError(f"leading eigenvalue is not positive: {lam1!r}")
    c = spectral_gap_c(base)
    lo, hi = _admissible_interval(c)
    if hi - lo <= 0.0:
        return 0.0
    d = base.eigenvalues / lam1
    y = np.ascontiguousarray(base.eigenvectors[w, :])
    s_coeffs = base.eigenvectors.T @ equal_superposition(base.n)
    ts = np.linspace(0.0, t_max, t_steps)

    def objective(r: float) -> float:
        return _rank_one_peak((1.0 + r) * d, y, s_coeffs, ts)

    grid = np.linspace(lo, hi, grid_points)
    values = [objective(float(r)) for r in grid]
    i = int(np.argmax(values))
    best_r, best_p = float(grid[i]), float(values[i])
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, grid_points - 1)])
    if b > a:
        r_ref, p_ref = _golden_max(objective, a, b, tol=tol_fraction * (hi - lo))
        if p_ref > best_p:
            best_r = float(r_ref)
    return best_r
