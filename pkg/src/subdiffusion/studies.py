"""Seeded problem families and the batch studies run from the command line."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from subdiffusion.fracops import TimeGrid
from subdiffusion.mittag_leffler import ml_array
from subdiffusion.norms import SpectralField, dirichlet_eigenvalues, spatial_norm
from subdiffusion.spectral_solver import (
    DEFAULT_DELTA,
    ProblemSpec,
    caputo_bound_ratio,
    solve,
    stability_ratio,
)


def initial_index(alpha: float, delta: float) -> float:
    """Sobolev index ``1 - 1/alpha + delta`` required of the initial data."""
    return 1.0 - 1.0 / alpha + delta


def _mode_rng(seed: int, trial: int, k: int) -> np.random.Generator:
    # one stream per mode, so that a problem with more modes extends the
    # problem with fewer modes instead of reshuffling it
    return np.random.default_rng([seed, trial, k])


def random_problem(
    alpha: float,
    M: int,
    n: int,
    seed: int,
    trial: int = 0,
    delta: float = DEFAULT_DELTA,
    T: float = 1.0,
    length: float = math.pi,
) -> ProblemSpec:
    """Random problem with ``g`` in :math:`H^{1-1/\\alpha+\\delta}` by construction.

    ``g_k = sigma_k xi_k`` with ``sigma_k = lambda_k^{-r/2} / k`` and
    ``xi_k`` uniform on ``[-1, 1]``, so ``sum_k lambda_k^r g_k^2 <= sum 1/k^2``.
    The forcing modes are smooth in time with amplitudes decaying like ``1/k``.
    """
    r = initial_index(alpha, delta)
    lam = dirichlet_eigenvalues(length, M)
    k = np.arange(1, M + 1)

    draws = np.array([_mode_rng(seed, trial, kk).uniform(-1.0, 1.0, size=4) for kk in k])
    g = lam ** (-0.5 * r) / k * draws[:, 0]
    amp = draws[:, 1:] / k[:, None]

    def forcing(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t) / T
        basis = np.vstack([np.ones_like(t), np.cos(np.pi * t), np.sin(2.0 * np.pi * t)])
        return amp @ basis

    return ProblemSpec.from_functions(alpha, TimeGrid(T, n), SpectralField(length, g), forcing)


# {{{ stability


@dataclass(frozen=True)
class StabilityRow:
    alpha: float
    trial: int
    ratio: float
    #: L2(J;H^-1) norm of the Caputo derivative over the H^alpha(J;H^-1) norm
    caputo_ratio: float


def stability_study(
    alphas,
    trials: int,
    seed: int,
    delta: float = DEFAULT_DELTA,
    M: int = 32,
    n: int = 256,
) -> list[StabilityRow]:
    rows = []
    for alpha in alphas:
        for trial in range(trials):
            problem = random_problem(alpha, M, n, seed, trial, delta)
            rows.append(
                StabilityRow(
                    alpha,
                    trial,
                    stability_ratio(problem, delta),
                    caputo_bound_ratio(solve(problem)),
                )
            )
    return rows


def max_ratio(rows: list[StabilityRow]) -> dict[float, float]:
    out: dict[float, float] = {}
    for row in rows:
        out[row.alpha] = max(out.get(row.alpha, 0.0), row.ratio)
    return out


# }}}


# {{{ trace study


def rough_initial_data(alpha: float, delta: float, M: int, length: float = math.pi) -> SpectralField:
    """``g_k^2 = lambda_k^{-(1 - 1/alpha + delta)} k^{-1.01}``: just inside the
    initial-data space."""
    lam = dirichlet_eigenvalues(length, M)
    k = np.arange(1, M + 1)
    return SpectralField(length, np.sqrt(lam ** (-initial_index(alpha, delta)) * k ** (-1.01)))


@dataclass(frozen=True)
class TraceColumn:
    s: float
    t: np.ndarray
    distance: np.ndarray
    #: whether the embedding guarantees ``distance -> 0`` as ``t -> 0``
    asserted: bool


def trace_distances(alpha: float, g: SpectralField, grid: TimeGrid, s_values) -> list[TraceColumn]:
    """``||u(t) - g||_{H^s}`` at every node for the unforced problem with data *g*."""
    lam = g.eigenvalues
    t = grid.t
    E = ml_array(alpha, 1.0, -np.multiply.outer(lam, t**alpha))
    E[:, 0] = 1.0
    diff_sq = (g.coeffs[:, None] * (E - 1.0)) ** 2

    threshold = 1.0 - 1.0 / alpha
    columns = []
    for s in s_values:
        # validates s through spatial_norm's range check
        spatial_norm(s, SpectralField(g.length, g.coeffs[:1]))
        dist = np.sqrt(lam**s @ diff_sq)
        columns.append(TraceColumn(float(s), t, dist, s < threshold))
    return columns


def trace_study(
    alpha: float,
    delta: float,
    s_values,
    grid: TimeGrid,
    M: int = 256,
    length: float = math.pi,
) -> list[TraceColumn]:
    return trace_distances(alpha, rough_initial_data(alpha, delta, M, length), grid, s_values)


# }}}
