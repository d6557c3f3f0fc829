"""Render publication-style figures from simulation CSV/JSON artifacts.

This package never computes simulation results itself: it reads the
documented CSV schemas (curve, summary, trials) plus the JSON manifest and
draws.  The only arithmetic it performs is the per-size median used by the
scaling plot.
"""

from .csvio import SchemaError, read_curve, read_summary, read_trials
from .figures import render_fig1, render_fig2, render_scaling

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "read_curve",
    "read_summary",
    "read_trials",
    "render_fig1",
    "render_fig2",
    "render_scaling",
]
