"""Strict readers for the simulation result schemas.

Inputs must match the documented headers exactly; anything else raises
:class:`SchemaError` with the offending file and line.
"""

from __future__ import annotations

import csv

CURVE_HEADER = ["p0", "p_bound"]
SUMMARY_HEADER = ["n", "bound_min", "bound_max", "bound_mean", "p_min", "p_max", "p_mean"]
TRIALS_HEADER = [
    "n", "p", "trial_index", "seed", "connected", "delta_min", "delta_max",
    "lambda1_normalized", "c", "r", "bound", "p_at_t", "p_peak", "t_peak",
    "infnorm_scaled", "marked_vertex", "status",
]


class SchemaError(ValueError):
    """The input file does not match the documented CSV schema."""


def _read(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}:1: empty file, expected header {header}") from None
        if got != header:
            raise SchemaError(f"{path}:1: header {got!r} does not match {header}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise SchemaError(f"{path}:{line_no}: expected {len(header)} fields")
            rows.append((line_no, row))
    return rows


def read_curve(path):
    """[(p0, p_bound)] from a bound-curve file."""
    pairs = []
    for line_no, row in _read(path, CURVE_HEADER):
        try:
            pairs.append((float(row[0]), float(row[1])))
        except ValueError as exc:
            raise SchemaError(f"{path}:{line_no}: {exc}") from exc
    return pairs


def read_summary(path):
    """Per-size summary dicts keyed by the header names."""
    rows = []
    for line_no, row in _read(path, SUMMARY_HEADER):
        try:
            rows.append(
                {
                    "n": int(row[0]),
                    "bound_min": float(row[1]),
                    "bound_max": float(row[2]),
                    "bound_mean": float(row[3]),
                    "p_min": float(row[4]),
                    "p_max": float(row[5]),
                    "p_mean": float(row[6]),
                }
            )
        except ValueError as exc:
            raise SchemaError(f"{path}:{line_no}: {exc}") from exc
    return rows


def read_trials(path):
    """Per-trial dicts with just the fields the plots need."""
    rows = []
    for line_no, row in _read(path, TRIALS_HEADER):
        try:
            rows.append(
                {
                    "n": int(row[0]),
                    "infnorm_scaled": float(row[14]),
                    "status": row[16],
                }
            )
        except ValueError as exc:
            raise SchemaError(f"{path}:{line_no}: {exc}") from exc
    return rows
