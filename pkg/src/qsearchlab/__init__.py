"""Continuous-time quantum spatial search lab for Erdos-Renyi random graphs.

Subpackages: graph sampling (:mod:`.graphgen`), dense spectral tools
(:mod:`.spectral`), real Lambert-W branches (:mod:`.lambertw`), search
Hamiltonians and evolution (:mod:`.search`), concentration-inequality
checks (:mod:`.bounds`), seeded campaigns (:mod:`.experiments`), and the
command-line front end (:mod:`.cli`).
"""

from ._version import __version__
from .graphgen import Graph, sample_gnp
from .lambertw import ThresholdConstants, lambert_w0, lambert_wm1, p_bound, threshold_constants
from .search import MatrixKind, SearchSetup, build_setup, success_probability
from .spectral import SpectralDecomposition, eig_sym

__all__ = [
    "__version__",
    "Graph",
    "sample_gnp",
    "ThresholdConstants",
    "lambert_w0",
    "lambert_wm1",
    "p_bound",
    "threshold_constants",
    "MatrixKind",
    "SearchSetup",
    "build_setup",
    "success_probability",
    "SpectralDecomposition",
    "eig_sym",
]
