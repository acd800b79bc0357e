from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from subdiffusion.fracops import TimeGrid
from subdiffusion.l1_oracle import (
    ConvergenceReport,
    cross_validate,
    fitted_order,
    solution_distance,
    solve_l1,
)
from subdiffusion.mittag_leffler import ml_array
from subdiffusion.norms import SpectralField
from subdiffusion.spectral_solver import ProblemSpec, solve
from subdiffusion.studies import random_problem


def problem(alpha=0.75, n=64, g=(1.0,), forcing_fn=None) -> ProblemSpec:
    return ProblemSpec.from_functions(alpha, TimeGrid(1.0, n), SpectralField(math.pi, g), forcing_fn)


def test_zero_problem():
    sol = solve_l1(problem(g=(0.0, 0.0)))
    assert np.all(sol.traj.values == 0.0)

    report = cross_validate(problem(n=16, g=(0.0,)), 3)
    assert report.distances == (0.0, 0.0, 0.0)
    assert math.isnan(report.order)


def test_homogeneous_mode_approaches_ml():
    alpha = 0.75
    errors = []
    for n in (64, 128, 256, 512):
        p = problem(alpha, n)
        d = solve_l1(p).traj.values[0]
        errors.append(np.max(np.abs(d - ml_array(alpha, 1.0, -(p.grid.t**alpha)))))
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_manufactured_smooth_order():
    alpha = 0.75
    fn = lambda t: np.atleast_2d(2.0 * t ** (2.0 - alpha) / math.gamma(3.0 - alpha) + t**2)
    ns = (64, 128, 256, 512)
    errors = []
    for n in ns:
        p = problem(alpha, n, (0.0,), fn)
        errors.append(np.max(np.abs(solve_l1(p).traj.values[0] - p.grid.t**2)))
    assert fitted_order(ns, errors) == pytest.approx(2.0 - alpha, abs=0.1)


def test_cross_validate_examples():
    report = cross_validate(problem(0.75, 64), 4)
    assert report.n == (64, 128, 256, 512)
    assert report.decreasing
    assert report.order > 0.0

    alpha = 0.75
    fn = lambda t: np.atleast_2d(2.0 * t ** (2.0 - alpha) / math.gamma(3.0 - alpha) + t**2)
    smooth = cross_validate(problem(alpha, 64, (0.0,), fn), 4)
    assert alpha - 0.2 <= smooth.order <= 2.0 - alpha + 0.2

    with pytest.raises(ValueError):
        cross_validate(problem(), 1)


@given(st.sampled_from([0.6, 0.75, 0.9]), st.lists(st.floats(0.01, 5.0), min_size=1, max_size=4))
def test_positive_and_nonincreasing(alpha, g):
    d = solve_l1(problem(alpha, 32, g)).traj.values
    assert np.all(d > 0.0)
    assert np.all(np.diff(d, axis=1) <= 0.0)


def test_backward_euler_limit():
    # at alpha -> 1 the scheme becomes backward Euler for the heat modes
    g = np.array([1.0, 0.5, -0.25])
    p = problem(0.999, 100, g)
    lam = p.eigenvalues
    be = g[:, None] * (1.0 + lam[:, None] * p.grid.tau) ** (-np.arange(101.0))[None, :]
    d = solve_l1(p).traj.values
    assert np.max(np.linalg.norm(d - be, axis=0)) <= 1e-2 * np.linalg.norm(g)


def test_linear_in_data():
    p = problem(0.7, 32, (1.0, 2.0), lambda t: np.vstack([np.sin(t), t]))
    a = solve_l1(p).traj.values
    b = solve_l1(p.scaled(-3.0)).traj.values
    assert np.allclose(b, -3.0 * a, atol=1e-13)


def test_distance_rejects_other_grid():
    a = solve_l1(problem(n=8))
    b = solve_l1(problem(n=16))
    with pytest.raises(ValueError):
        solution_distance(a, b)


def test_fitted_order():
    ns = [10, 20, 40]
    assert fitted_order(ns, [1.0, 0.25, 0.0625]) == pytest.approx(2.0)
    assert math.isnan(fitted_order(ns, [1.0, 0.0, 0.0]))
    report = ConvergenceReport((1, 2), (2.0, 1.0), 1.0)
    assert list(report.rows()) == [(1, 2.0), (2, 1.0)]


def test_random_problems_agree():
    for trial in range(3):
        p = random_problem(0.75, 8, 32, seed=5, trial=trial)
        assert cross_validate(p, 3).decreasing


def test_spectral_and_l1_share_initial_value():
    p = random_problem(0.6, 6, 16, seed=2)
    assert np.array_equal(solve(p).traj.values[:, 0], solve_l1(p).traj.values[:, 0])
