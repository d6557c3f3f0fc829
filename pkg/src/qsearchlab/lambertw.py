"""Real branches of the Lambert W function and the threshold-regime constants.

Both branches are computed by Halley iteration on f(w) = w e^w - x with
branch-specific initial guesses: a series in sqrt(2(e x + 1)) near the
branch point -1/e, log(x) - log(log(x)) for large arguments on the
principal branch, and log(-x) - log(-log(-x)) for the lower branch near
0-.  Results satisfy |w e^w - x| <= 1e-12 * max(1, |x|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BRANCH_POINT",
    "lambert_w0",
    "lambert_wm1",
    "ThresholdConstants",
    "threshold_constants",
    "p_bound",
]

BRANCH_POINT = -math.exp(-1.0)  # -1/e, left edge of both real branches

_RESIDUAL_TOL = 1e-12
_SNAP = 1e-15  # inputs this far below -1/e are treated as exactly -1/e
_MAX_ITER = 100


def _halley(x: float, w: float) -> float:
    """Iterate Halley's method on w e^w - x from the guess w."""
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        w_next = w - step
        if abs(step) <= 1e-16 * (2.0 + abs(w)):
            return w_next
        w = w_next
    return w


def _check_residual(w: float, x: float) -> float:
    resid = abs(w * math.exp(w) - x)
    if resid > _RESIDUAL_TOL * max(1.0, abs(x)):
        raise ArithmeticError(f"Lambert W iteration did not converge at x={x!r}")
    return w


def _snap_domain(x: float) -> float:
    if x < BRANCH_POINT:
        if x >= BRANCH_POINT - _SNAP:
            return BRANCH_POINT
        raise ValueError(f"argument {x!r} below the branch point -1/e")
    return x


def lambert_w0(x: float) -> float:
    """Principal branch W0: the solution w >= -1 of w e^w = x, for x >= -1/e."""
    x = _snap_domain(float(x))
    if x == BRANCH_POINT:
        return -1.0
    if x == 0.0:
        return 0.0
    if x < -0.25:
        rho = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + rho - rho * rho / 3.0 + 11.0 * rho**3 / 72.0
    elif x < math.e:
        w = x / (1.0 + x)  # crude but inside the Halley basin
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    return _check_residual(_halley(x, w), x)


def lambert_wm1(x: float) -> float:
    """Lower branch W-1: the solution w <= -1 of w e^w = x, for -1/e <= x < 0."""
    x = float(x)
    if x >= 0.0:
        raise ValueError(f"lower branch needs -1/e <= x < 0, got {x!r}")
    x = _snap_domain(x)
    if x == BRANCH_POINT:
        return -1.0
    if x > -0.27:
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    else:
        rho = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 - rho - rho * rho / 3.0 - 11.0 * rho**3 / 72.0
    return _check_residual(_halley(x, w), x)


@dataclass(frozen=True)
class ThresholdConstants:
    """Constants a > p0 > b > 0 governing the extreme Laplacian eigenvalues
    when the edge probability scales as p0 log(n)/n with p0 > 1."""

    p0: float
    a: float
    b: float


def _branch_argument(p0: float) -> float:
    if p0 <= 1.0:
        raise ValueError(f"threshold coefficient must exceed 1, got {p0!r}")
    return (1.0 - p0) / (math.e * p0)


def threshold_constants(p0: float) -> ThresholdConstants:
    """a = (1-p0)/W0((1-p0)/(e p0)) and b likewise with the lower branch."""
    x = _branch_argument(p0)
    a = (1.0 - p0) / lambert_w0(x)
    b = (1.0 - p0) / lambert_wm1(x)
    return ThresholdConstants(p0=float(p0), a=a, b=b)


def p_bound(p0: float) -> float:
    """Limit lower bound on the search success probability, W0(x)/W-1(x) in (0, 1)."""
    x = _branch_argument(p0)
    return lambert_w0(x) / lambert_wm1(x)
