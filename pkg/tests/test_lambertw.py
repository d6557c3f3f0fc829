import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsearchlab.lambertw import (
    BRANCH_POINT,
    lambert_w0,
    lambert_wm1,
    p_bound,
    threshold_constants,
)

from _oracles import lambert_w0_bisect, lambert_wm1_bisect

# Frozen from the bisection oracle (tests/_oracles.py).
W0_AT_1 = 0.5671432904097838
WM1_AT_MINUS_TENTH = -3.577152063957297
WM1_AT_HALF_BRANCH = -2.678346990016661
A_AT_2 = 4.311070407001005
B_AT_2 = 0.37336461770167406
PBOUND_AT_2 = 0.08660601253353341


def residual(w, x):
    return abs(w * math.exp(w) - x)


def test_w0_trivia():
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(BRANCH_POINT) == -1.0


def test_w0_at_one_vs_bisection_oracle():
    assert lambert_w0_bisect(1.0) == pytest.approx(W0_AT_1, abs=1e-12)
    assert lambert_w0(1.0) == pytest.approx(W0_AT_1, abs=1e-6)


def test_wm1_trivia_and_oracle_values():
    assert lambert_wm1(BRANCH_POINT) == -1.0
    assert lambert_wm1_bisect(-0.1) == pytest.approx(WM1_AT_MINUS_TENTH, abs=1e-10)
    assert lambert_wm1(-0.1) == pytest.approx(WM1_AT_MINUS_TENTH, abs=1e-4)
    x = -1.0 / (2.0 * math.e)
    assert lambert_wm1_bisect(x) == pytest.approx(WM1_AT_HALF_BRANCH, abs=1e-10)
    assert lambert_wm1(x) == pytest.approx(WM1_AT_HALF_BRANCH, abs=1e-4)


def test_domain_errors():
    with pytest.raises(ValueError):
        lambert_w0(-0.4)
    with pytest.raises(ValueError):
        lambert_wm1(-0.5)
    with pytest.raises(ValueError):
        lambert_wm1(0.0)
    with pytest.raises(ValueError):
        lambert_wm1(0.1)


def test_branch_point_snapping():
    assert lambert_w0(BRANCH_POINT - 1e-16) == -1.0
    assert lambert_wm1(BRANCH_POINT - 1e-16) == -1.0
    with pytest.raises(ValueError):
        lambert_w0(BRANCH_POINT - 1e-13)


def test_residual_on_dense_grids():
    w0_grid = np.concatenate(
        [
            np.linspace(BRANCH_POINT, 1.0, 2001),
            np.logspace(0.0, 8.0, 2001),
        ]
    )
    for x in w0_grid:
        w = lambert_w0(float(x))
        assert residual(w, float(x)) <= 1e-12 * max(1.0, abs(float(x)))
        assert w >= -1.0 - 1e-12
    wm1_grid = np.concatenate(
        [
            np.linspace(BRANCH_POINT, -1e-3, 2001),
            -np.logspace(-3.0, -300.0, 2001),
        ]
    )
    for x in wm1_grid:
        w = lambert_wm1(float(x))
        assert residual(w, float(x)) <= 1e-12 * max(1.0, abs(float(x)))
        assert w <= -1.0 + 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=BRANCH_POINT, max_value=1e12, allow_nan=False))
def test_w0_round_trip_property(x):
    assert residual(lambert_w0(x), x) <= 1e-12 * max(1.0, abs(x))


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=BRANCH_POINT, max_value=-1e-12, allow_nan=False))
def test_wm1_round_trip_property(x):
    assert residual(lambert_wm1(x), x) <= 1e-12 * max(1.0, abs(x))


def test_threshold_constants_at_two():
    tc = threshold_constants(2.0)
    assert tc.a == pytest.approx(A_AT_2, abs=1e-3)
    assert tc.b == pytest.approx(B_AT_2, abs=1e-4)
    assert tc.a > tc.p0 > tc.b > 0.0


def test_threshold_constants_asymptote():
    tc = threshold_constants(1e6)
    assert tc.b / tc.a > 0.99
    assert abs(tc.a / tc.p0 - 1.0) < 3e-3
    assert abs(tc.b / tc.p0 - 1.0) < 3e-3


def test_threshold_constants_near_branch_degeneracy():
    tc = threshold_constants(1.0 + 1e-9)
    assert tc.a > 100.0 * tc.b
    assert tc.b / tc.a < 1e-6


def test_threshold_constants_rejects_subcritical():
    for bad in (1.0, 0.5, -2.0):
        with pytest.raises(ValueError):
            threshold_constants(bad)
        with pytest.raises(ValueError):
            p_bound(bad)


def test_p_bound_value_and_limits():
    assert p_bound(2.0) == pytest.approx(PBOUND_AT_2, abs=1e-3)
    assert 0.0 < p_bound(1.0 + 1e-6) < 1e-3
    assert 0.999 < p_bound(1e9) < 1.0


def test_p_bound_strictly_increasing():
    grid = np.linspace(1.0 + 1e-3, 100.0, 400)
    values = [p_bound(float(p0)) for p0 in grid]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(0.0 < v < 1.0 for v in values)


def test_p_bound_times_a_equals_b():
    for p0 in (1.01, 1.5, 2.0, 5.0, 50.0, 1e4):
        tc = threshold_constants(p0)
        assert abs(p_bound(p0) * tc.a - tc.b) <= 1e-12 * max(1.0, tc.b)
