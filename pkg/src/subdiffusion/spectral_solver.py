"""Mode-by-mode solution of the time-fractional heat equation on ``(0, L)``.

With the Dirichlet eigenpairs ``(lambda_k, w_k)`` of ``-d^2/dx^2`` the
equation decouples into scalar problems

.. math::

    \\partial_t^\\alpha d_k + \\lambda_k d_k = f_k, \\qquad d_k(0) = g_k,

whose solution is

.. math::

    d_k(t) = g_k E_\\alpha(-\\lambda_k t^\\alpha)
        + \\alpha \\int_0^t f_k(t - s) s^{\\alpha-1} E_\\alpha'(-\\lambda_k s^\\alpha)\\,ds.

The convolution is evaluated by product integration: the forcing is replaced
by its piecewise-linear interpolant and the weight moments on every cell are
exact, using that :math:`W(s) = s^\\alpha E_{\\alpha,\\alpha+1}(-\\lambda s^\\alpha)`
is an antiderivative of the weight and
:math:`s^{\\alpha+1} E_{\\alpha,\\alpha+2}(-\\lambda s^\\alpha)` one of ``W``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from subdiffusion.fracops import GridFunction, TimeGrid, _caputo_l1_values, check_order
from subdiffusion.mittag_leffler import ml_array
from subdiffusion.norms import (
    ModeTrajectories,
    SpectralField,
    bochner_l2_norm,
    dirichlet_eigenvalues,
    full_solution_norm,
    open_start_weights,
    spatial_norm,
)

#: default regularity margin of the initial data
DEFAULT_DELTA = 0.1

ForcingFn = Callable[[np.ndarray], np.ndarray]


# {{{ eigenpairs


@dataclass(frozen=True)
class Eigenpair:
    """``lambda_k = (k pi / L)**2`` and ``w_k(x) = sqrt(2/L) sin(k pi x / L)``."""

    k: int
    length: float

    @property
    def eigenvalue(self) -> float:
        return (self.k * math.pi / self.length) ** 2

    def __call__(self, x):
        return math.sqrt(2.0 / self.length) * np.sin(self.k * np.pi * np.asarray(x) / self.length)


def eigenpairs(length: float, M: int) -> list[Eigenpair]:
    dirichlet_eigenvalues(length, M)
    return [Eigenpair(k, float(length)) for k in range(1, M + 1)]


# }}}


# {{{ problem


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Initial data, forcing modes and discretization of one problem.

    *forcing_fn*, when given, maps an array of times to the ``(M, len(t))``
    forcing modes and is used by :meth:`with_grid`; otherwise refinement
    interpolates the stored samples linearly.
    """

    alpha: float
    grid: TimeGrid
    g: SpectralField
    forcing: ModeTrajectories
    forcing_fn: Optional[ForcingFn] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        check_order(self.alpha, "alpha", 0.5, 1.0)
        if self.forcing.grid != self.grid:
            raise ValueError("forcing is sampled on a different grid")
        if self.forcing.M != self.g.M:
            raise ValueError(f"g has {self.g.M} modes, forcing has {self.forcing.M}")
        if self.forcing.length != self.g.length:
            raise ValueError("g and forcing live on different intervals")

    @property
    def M(self) -> int:
        return self.g.M

    @property
    def length(self) -> float:
        return self.g.length

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.g.eigenvalues

    @classmethod
    def from_functions(
        cls,
        alpha: float,
        grid: TimeGrid,
        g: SpectralField,
        forcing_fn: Optional[ForcingFn] = None,
    ) -> ProblemSpec:
        if forcing_fn is None:
            values = np.zeros((g.M, grid.n + 1))
        else:
            values = np.broadcast_to(forcing_fn(grid.t), (g.M, grid.n + 1))
        return cls(alpha, grid, g, ModeTrajectories(grid, g.length, values), forcing_fn)

    def with_grid(self, n: int) -> ProblemSpec:
        """The same problem on ``n`` cells of ``(0, T)``."""
        grid = TimeGrid(self.grid.T, n)
        if self.forcing_fn is not None:
            return ProblemSpec.from_functions(self.alpha, grid, self.g, self.forcing_fn)

        values = np.array([np.interp(grid.t, self.grid.t, row) for row in self.forcing.values])
        return ProblemSpec(self.alpha, grid, self.g, ModeTrajectories(grid, self.length, values))

    def scaled(self, factor: float) -> ProblemSpec:
        fn = self.forcing_fn
        return ProblemSpec(
            self.alpha,
            self.grid,
            SpectralField(self.length, factor * self.g.coeffs),
            ModeTrajectories(self.grid, self.length, factor * self.forcing.values),
            None if fn is None else (lambda t: factor * fn(t)),
        )


@dataclass(frozen=True, eq=False)
class SolutionField:
    traj: ModeTrajectories
    problem: ProblemSpec

    @property
    def grid(self) -> TimeGrid:
        return self.traj.grid

    def at(self, i: int) -> SpectralField:
        return self.traj.at(i)


# }}}


# {{{ single modes


def mode_homogeneous(alpha: float, lam: float, g_k: float, grid: TimeGrid) -> GridFunction:
    """``g_k E_alpha(-lam t**alpha)`` at the grid nodes."""
    if not (lam >= 0.0):
        raise ValueError(f"eigenvalue must be nonnegative: got {lam!r}")
    t = grid.t
    values = g_k * ml_array(alpha, 1.0, -lam * t**alpha)
    values[0] = g_k
    return GridFunction(grid, values)


def _forced_weights(alpha: float, lam: float, grid: TimeGrid) -> tuple[np.ndarray, np.ndarray]:
    """Convolution weights ``(c, b_last)`` with ``psi_n = sum_m c_m f_{n-m} + b_last[n-1] f_0``."""
    s = grid.t
    z = -lam * s**alpha
    W = s**alpha * ml_array(alpha, alpha + 1.0, z)
    V = s ** (alpha + 1.0) * ml_array(alpha, alpha + 2.0, z)

    # exact moments of the weight W'(s) over [s_j, s_{j+1}] against 1 and (s - s_j)/tau
    A = np.diff(W)
    B = W[1:] - np.diff(V) / grid.tau

    c = A - B
    c[1:] += B[:-1]
    return c, B


def _forced_values(alpha: float, lam: float, grid: TimeGrid, f: np.ndarray) -> np.ndarray:
    n = grid.n
    c, B = _forced_weights(alpha, lam, grid)
    out = np.zeros(n + 1)
    out[1:] = np.convolve(f[1:], c)[:n] + B * f[0]
    return out


def mode_forced(
    alpha: float, lam: float, f_k: GridFunction, grid: Optional[TimeGrid] = None
) -> GridFunction:
    """Convolution of the forcing mode with ``alpha s**(alpha-1) E_alpha'(-lam s**alpha)``.

    *grid* defaults to the grid of *f_k* and must agree with it when given.
    """
    if not (lam >= 0.0):
        raise ValueError(f"eigenvalue must be nonnegative: got {lam!r}")
    if grid is not None and grid != f_k.grid:
        raise ValueError("forcing is sampled on a different grid")
    return GridFunction(f_k.grid, _forced_values(alpha, lam, f_k.grid, f_k.values))


# }}}


# {{{ solver


def solve(problem: ProblemSpec) -> SolutionField:
    """Mode-wise solution on the time grid of *problem*."""
    alpha, grid = problem.alpha, problem.grid
    lam = problem.eigenvalues
    t = grid.t

    E = ml_array(alpha, 1.0, -np.multiply.outer(lam, t**alpha))
    d = problem.g.coeffs[:, None] * E
    d[:, 0] = problem.g.coeffs

    forcing = problem.forcing.values
    for k in np.flatnonzero(np.any(forcing != 0.0, axis=1)):
        d[k] += _forced_values(alpha, lam[k], grid, forcing[k])

    return SolutionField(ModeTrajectories(grid, problem.length, d), problem)


def evaluate(sol: SolutionField, t: float, x: float) -> float:
    """Synthesize ``u(t, x) = sum_k d_k(t) w_k(x)`` at a grid node ``t``."""
    grid = sol.grid
    i = int(round(t / grid.tau))
    if not (0 <= i <= grid.n) or abs(i * grid.tau - t) > 1.0e-12 * max(1.0, grid.T):
        raise ValueError(f"t = {t!r} is not a node of the time grid")

    L = sol.problem.length
    if not (0.0 <= x <= L):
        raise ValueError(f"x = {x!r} lies outside [0, {L}]")

    return float(sol.traj.at(i)(x))


def ode_residual(sol: SolutionField) -> np.ndarray:
    """Per-mode discrete :math:`L_2` norm over ``t_1..t_n`` of
    ``caputo_l1(d_k) + lambda_k d_k - f_k``."""
    problem = sol.problem
    grid = sol.grid
    lam = problem.eigenvalues
    w = grid.trapezoid_weights()[1:]
    w[0] = grid.tau

    res = np.empty(problem.M)
    for k, (d, f) in enumerate(zip(sol.traj.values, problem.forcing.values)):
        r = _caputo_l1_values(problem.alpha, grid.tau, d) + lam[k] * d - f
        res[k] = math.sqrt(np.sum(w * r[1:] ** 2))
    return res


def caputo_bound_ratio(sol: SolutionField) -> float:
    """``||d_t^alpha u||_{L2(J;H^-1)} / ||u||_{H^alpha(J;H^-1)}`` with the
    Caputo derivative taken by the L1 scheme."""
    problem = sol.problem
    grid = sol.grid
    w = open_start_weights(grid)

    D = np.array([_caputo_l1_values(problem.alpha, grid.tau, d) for d in sol.traj.values])
    num = math.sqrt(np.sum((D**2 @ w) / problem.eigenvalues))
    _, den = full_solution_norm(sol.traj, problem.alpha)
    return num / den


def data_norm(problem: ProblemSpec, delta: float = DEFAULT_DELTA) -> float:
    """``||g||_{H^{1 - 1/alpha + delta}} + ||f||_{L2(J;H^-1)}``."""
    if not (delta > 0.0):
        raise ValueError(f"delta must be positive: got {delta!r}")
    r = 1.0 - 1.0 / problem.alpha + delta
    if not (-1.0 <= r <= 1.0):
        raise ValueError(f"initial-data index 1 - 1/alpha + delta = {r} lies outside [-1, 1]")
    return spatial_norm(r, problem.g) + bochner_l2_norm(-1.0, problem.forcing)


def stability_ratio(problem: ProblemSpec, delta: float = DEFAULT_DELTA) -> float:
    """Solution norm over data norm in the well-posedness estimate."""
    den = data_norm(problem, delta)
    if den == 0.0:
        raise ValueError("stability ratio undefined for zero data")

    sol = solve(problem)
    energy, weak = full_solution_norm(sol.traj, problem.alpha)
    return (energy + weak) / den


# }}}


# {{{ Mittag-Leffler mode estimates


def _graded_gauss(T: float, panels: int = 120, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes on the geometric panels ``[T 2^-(j+1), T 2^-j]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    right = T * 2.0 ** -np.arange(panels)
    left = 0.5 * right
    h = 0.5 * (right - left)
    nodes = (left + h)[:, None] + h[:, None] * x[None, :]
    weights = h[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def relaxation_l2_sq(alpha: float, lam: float, T: float) -> float:
    """``int_0^T E_alpha(-lam t**alpha)**2 dt`` by graded Gauss quadrature."""
    t, w = _graded_gauss(T)
    return float(np.sum(w * ml_array(alpha, 1.0, -lam * t**alpha) ** 2))


def relaxation_kernel_l1(alpha: float, lam: float, T: float) -> float:
    """``int_0^T |t**(alpha-1) E_alpha'(-lam t**alpha)| dt`` by graded Gauss quadrature."""
    t, w = _graded_gauss(T)
    # E_alpha' = E_{alpha,alpha} / alpha
    k = t ** (alpha - 1.0) * ml_array(alpha, alpha, -lam * t**alpha) / alpha
    return float(np.sum(w * np.abs(k)))


# }}}
