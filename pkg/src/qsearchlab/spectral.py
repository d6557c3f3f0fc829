"""Symmetric eigendecomposition and eigenvector deviation metrics.

Everything here is dense: the lab caps matrix sizes at a few thousand, and
an exact full decomposition keeps the propagator and overlap computations
simple.  Eigenvalues are delivered in descending order so index 0 is always
the leading eigenpair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralDecomposition",
    "OverlapSplit",
    "SpectralFlag",
    "DegenerateLeadingEigenvalue",
    "MixedSignPrincipalVector",
    "SYMMETRY_TOL",
    "equal_superposition",
    "eig_sym",
    "reconstruct",
    "principal_vector",
    "overlap_split",
    "infnorm_deviation",
    "hidden_mass_state",
    "standardized_lambda1",
]

SYMMETRY_TOL = 1e-12


class SpectralFlag(RuntimeError):
    """Raised where the requested quantity is ill-posed, instead of guessing."""


class DegenerateLeadingEigenvalue(SpectralFlag):
    """Leading eigenvalue tied within tolerance; no canonical principal vector."""


class MixedSignPrincipalVector(SpectralFlag):
    """Candidate principal vector has genuinely mixed signs (non-Perron input)."""


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues sorted descending; orthonormal eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])


@dataclass(frozen=True)
class OverlapSplit:
    """Split of the equal superposition against a unit vector: alpha^2 + beta^2 = 1."""

    alpha: float
    beta: float


def equal_superposition(n: int) -> np.ndarray:
    """Unit vector with all entries 1/sqrt(n)."""
    return np.full(n, 1.0 / math.sqrt(n))


def eig_sym(m: np.ndarray, *, symmetry_tol: float = SYMMETRY_TOL) -> SpectralDecomposition:
    """Full eigendecomposition of a real symmetric matrix (LAPACK, tridiagonalization).

    Rejects inputs whose asymmetry exceeds ``symmetry_tol`` entrywise.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym > symmetry_tol:
        raise ValueError(f"matrix is not symmetric: max |M - M^T| = {asym:.3e}")
    vals, vecs = np.linalg.eigh(m)
    return SpectralDecomposition(
        eigenvalues=np.ascontiguousarray(vals[::-1]),
        eigenvectors=np.ascontiguousarray(vecs[:, ::-1]),
    )


def reconstruct(d: SpectralDecomposition) -> np.ndarray:
    """Sum of lambda_k |u_k><u_k|; inverse of :func:`eig_sym` up to round-off."""
    return (d.eigenvectors * d.eigenvalues) @ d.eigenvectors.T


def principal_vector(
    d: SpectralDecomposition,
    *,
    degeneracy_tol: float = 1e-12,
    sign_tol: float = 1e-10,
) -> np.ndarray:
    """Leading eigenvector with the entrywise-nonnegative sign fix.

    Valid for decompositions of entrywise-nonnegative matrices of connected
    graphs, where Perron-Frobenius guarantees a nonnegative leading vector.
    A tied leading eigenvalue or genuinely mixed signs raise a
    :class:`SpectralFlag` subclass rather than silently picking a vector.
    """
    if d.n > 1 and d.eigenvalues[0] - d.eigenvalues[1] <= degeneracy_tol:
        raise DegenerateLeadingEigenvalue(
            f"leading eigenvalues tie within {degeneracy_tol:g}: "
            f"{d.eigenvalues[0]!r} vs {d.eigenvalues[1]!r}"
        )
    v = d.eigenvectors[:, 0].copy()
    if v.sum() < 0.0:
        v = -v
    low = float(v.min())
    if low < -sign_tol:
        raise MixedSignPrincipalVector(
            f"entries of mixed sign (min {low:.3e}); input is not Perron-like"
        )
    return v


def overlap_split(v: np.ndarray, *, unit_tol: float = 1e-9) -> OverlapSplit:
    """Coefficients (alpha, beta) of a unit vector against the equal superposition.

    beta is the norm of the residual v - alpha s rather than sqrt(1 - alpha^2),
    which loses half the digits when alpha is close to 1.
    """
    v = np.asarray(v, dtype=float)
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > unit_tol:
        raise ValueError(f"expected a unit vector, got norm {nrm!r}")
    v = v / nrm
    s = equal_superposition(v.shape[0])
    alpha = float(s @ v)
    beta = float(np.linalg.norm(v - alpha * s))
    return OverlapSplit(alpha=alpha, beta=beta)


def infnorm_deviation(v: np.ndarray, n: int) -> float:
    """Max coordinate deviation from the equal superposition, max_i |v_i - 1/sqrt(n)|."""
    v = np.asarray(v, dtype=float)
    if v.shape != (n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({n},)")
    return float(np.max(np.abs(v - 1.0 / math.sqrt(n))))


def hidden_mass_state(n: int, k: int) -> np.ndarray:
    """Unit vector with overlap 1 - o(1) on the superposition yet k suppressed entries.

    First k coordinates carry 1/(n sqrt(k)); the remaining n - k carry
    sqrt(n^2 - 1)/(n sqrt(n - k)).
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    v = np.empty(n)
    v[:k] = 1.0 / (n * math.sqrt(k))
    v[k:] = math.sqrt(n * n - 1.0) / (n * math.sqrt(n - k))
    return v


def standardized_lambda1(n: int, p: float, lambda1_normalized: float) -> float:
    """Z-score of the leading eigenvalue of A/(np) under its normal approximation.

    The reference law has mean 1 + (1-p)/(np) and standard deviation
    (1/n) sqrt(2(1-p)/p).
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"edge probability must lie strictly in (0, 1), got {p}")
    mean = 1.0 + (1.0 - p) / (n * p)
    sd = math.sqrt(2.0 * (1.0 - p) / p) / n
    return (lambda1_normalized - mean) / sd
