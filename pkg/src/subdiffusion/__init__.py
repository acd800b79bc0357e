"""Spectral solution of the time-fractional heat equation with Mittag-Leffler
functions, fractional operators on uniform grids and the norms of the
variational theory."""

from __future__ import annotations

from subdiffusion.fracops import (
    GridFunction,
    TimeGrid,
    caputo_l1,
    caputo_via_rl,
    rl_left_integral,
    rl_right_integral,
)
from subdiffusion.l1_oracle import ConvergenceReport, cross_validate, solve_l1
from subdiffusion.mittag_leffler import CertificationError, MLParams, ml, ml_array, ml_deriv
from subdiffusion.norms import (
    ModeTrajectories,
    SpectralField,
    bochner_l2_norm,
    bochner_seminorm,
    full_solution_norm,
    seminorm_via_rl,
    slobodeckij_seminorm,
    spatial_norm,
)
from subdiffusion.spectral_solver import (
    DEFAULT_DELTA,
    ProblemSpec,
    SolutionField,
    eigenpairs,
    evaluate,
    mode_forced,
    mode_homogeneous,
    solve,
    stability_ratio,
)

__all__ = [
    "DEFAULT_DELTA",
    "CertificationError",
    "ConvergenceReport",
    "GridFunction",
    "MLParams",
    "ModeTrajectories",
    "ProblemSpec",
    "SolutionField",
    "SpectralField",
    "TimeGrid",
    "bochner_l2_norm",
    "bochner_seminorm",
    "caputo_l1",
    "caputo_via_rl",
    "cross_validate",
    "eigenpairs",
    "evaluate",
    "full_solution_norm",
    "ml",
    "ml_array",
    "ml_deriv",
    "mode_forced",
    "mode_homogeneous",
    "rl_left_integral",
    "rl_right_integral",
    "seminorm_via_rl",
    "slobodeckij_seminorm",
    "solve",
    "solve_l1",
    "spatial_norm",
    "stability_ratio",
]
