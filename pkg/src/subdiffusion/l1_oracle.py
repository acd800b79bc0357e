"""Implicit L1 time stepping for the decoupled mode equations.

This solver shares nothing with :mod:`subdiffusion.spectral_solver` beyond
the problem description, which makes it a cross-check for the
Mittag-Leffler based solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from subdiffusion.fracops import l1_weights
from subdiffusion.norms import ModeTrajectories
from subdiffusion.spectral_solver import ProblemSpec, SolutionField, solve


def solve_l1(problem: ProblemSpec) -> SolutionField:
    """Solve every mode with the L1 scheme, treating ``lambda_k d`` implicitly."""
    alpha, grid = problem.alpha, problem.grid
    n = grid.n
    lam = problem.eigenvalues
    f = problem.forcing.values

    c = grid.tau ** (-alpha) / math.gamma(2.0 - alpha)
    b = l1_weights(alpha, n)

    d = np.empty((problem.M, n + 1))
    d[:, 0] = problem.g.coeffs
    diffs = np.empty((problem.M, n))
    for m in range(1, n + 1):
        # sum_{j=1}^{m-1} b_j (d^{m-j} - d^{m-j-1})
        history = diffs[:, m - 2 :: -1] @ b[1:m] if m > 1 else 0.0
        d[:, m] = (f[:, m] + c * (d[:, m - 1] - history)) / (c + lam)
        diffs[:, m - 1] = d[:, m] - d[:, m - 1]

    return SolutionField(ModeTrajectories(grid, problem.length, d), problem)


def solution_distance(a: SolutionField, b: SolutionField) -> float:
    """Discrete :math:`L_\\infty(J; L_2(\\Omega))` distance of two solutions."""
    if a.grid != b.grid:
        raise ValueError("solutions live on different grids")
    return float(np.max(np.sqrt(np.sum((a.traj.values - b.traj.values) ** 2, axis=0))))


@dataclass(frozen=True)
class ConvergenceReport:
    n: tuple[int, ...]
    distances: tuple[float, ...]
    #: least-squares slope of ``-log(distance)`` against ``log(n)``
    order: float

    @property
    def decreasing(self) -> bool:
        d = self.distances
        return all(d[i + 1] < d[i] for i in range(len(d) - 1))

    def rows(self):
        for n, dist in zip(self.n, self.distances):
            yield n, dist


def fitted_order(n, errors) -> float:
    """Least-squares slope of ``-log(errors)`` against ``log(n)``; NaN if any error vanishes."""
    errors = np.asarray(errors, dtype=np.float64)
    if np.any(errors <= 0.0):
        return math.nan
    slope, _ = np.polyfit(np.log(np.asarray(n, dtype=np.float64)), np.log(errors), 1)
    return float(-slope)


def cross_validate(problem: ProblemSpec, refinements: int) -> ConvergenceReport:
    """Distance between :func:`~subdiffusion.spectral_solver.solve` and
    :func:`solve_l1` on ``refinements`` successively doubled grids."""
    if refinements < 2:
        raise ValueError(f"need at least two refinement levels: got {refinements!r}")

    ns, dists = [], []
    for i in range(refinements):
        p = problem if i == 0 else problem.with_grid(problem.grid.n * 2**i)
        ns.append(p.grid.n)
        dists.append(solution_distance(solve(p), solve_l1(p)))

    return ConvergenceReport(tuple(ns), tuple(dists), fitted_order(ns, dists))
