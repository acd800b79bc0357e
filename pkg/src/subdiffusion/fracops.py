"""Riemann-Liouville integrals and Caputo derivatives on uniform time grids.

All operators act on samples at the nodes ``t_i = i T / n`` and are built
from exact kernel moments over each cell (product integration), so the weak
singularity of the kernel never gets sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


# {{{ grids


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of ``(0, T)`` into ``n`` cells."""

    T: float
    n: int

    def __post_init__(self) -> None:
        if not (self.T > 0.0) or not math.isfinite(self.T):
            raise ValueError(f"T must be positive: got {self.T!r}")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2: got {self.n!r}")

    @property
    def tau(self) -> float:
        return self.T / self.n

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.tau

    @property
    def midpoints(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) * self.tau

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n + 1, self.tau)
        w[0] = w[-1] = 0.5 * self.tau
        return w


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real samples of a function of time at the nodes of a :class:`TimeGrid`."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.grid.n + 1,):
            raise ValueError(
                f"expected {self.grid.n + 1} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: TimeGrid, f: Callable[[np.ndarray], np.ndarray]) -> GridFunction:
        return cls(grid, np.broadcast_to(f(grid.t), (grid.n + 1,)).astype(np.float64))

    def __mul__(self, other: float) -> GridFunction:
        return GridFunction(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: GridFunction) -> GridFunction:
        if other.grid != self.grid:
            raise ValueError("grid functions live on different grids")
        return GridFunction(self.grid, self.values + other.values)

    def reflect(self) -> GridFunction:
        """Samples of ``t -> f(T - t)``."""
        return GridFunction(self.grid, self.values[::-1].copy())


def check_order(value: float, name: str = "order", lo: float = 0.0, hi: float = 1.0) -> float:
    """Validate a fractional order lying in the open interval ``(lo, hi)``."""
    value = float(value)
    if not (lo < value < hi):
        raise ValueError(f"{name} must lie in ({lo}, {hi}): got {value!r}")
    return value


# }}}


# {{{ weights


def _second_difference_pow(m: np.ndarray, p: float) -> np.ndarray:
    """``(m + 1)**p - 2 m**p + (m - 1)**p`` for ``m >= 1`` without cancellation."""
    m = np.asarray(m, dtype=np.float64)
    out = np.full_like(m, 2.0**p - 2.0)
    big = m > 1
    x = 1.0 / m[big]
    out[big] = m[big] ** p * (np.expm1(p * np.log1p(x)) + np.expm1(p * np.log1p(-x)))
    return out


def _first_difference_pow(j: np.ndarray, p: float) -> np.ndarray:
    """``(j + 1)**p - j**p`` for ``j >= 0``."""
    j = np.asarray(j, dtype=np.float64)
    out = np.ones_like(j)
    pos = j > 0
    out[pos] = j[pos] ** p * np.expm1(p * np.log1p(1.0 / j[pos]))
    return out


def rl_weights(beta: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Product-trapezoidal weights of the left Riemann-Liouville integral.

    Returns ``(w, w0)`` such that, with ``c = tau**beta / Gamma(beta + 2)``,

    .. math::

        I_n = c \\Big( w0_n f_0 + \\sum_{j=1}^{n} w_{n-j} f_j \\Big),

    which integrates the piecewise-linear interpolant of ``f`` exactly against
    ``(t_n - s)**(beta - 1) / Gamma(beta)``.
    """
    p = beta + 1.0
    w = np.empty(n)
    w[0] = 1.0
    if n > 1:
        w[1:] = _second_difference_pow(np.arange(1, n), p)

    # (k - 1)**p - (k - 1 - beta) k**beta = k**beta (k ((1 - 1/k)**p - 1) + 1 + beta)
    w0 = np.empty(n)
    w0[0] = beta
    k = np.arange(2, n + 1, dtype=np.float64)
    w0[1:] = k**beta * (k * np.expm1(p * np.log1p(-1.0 / k)) + 1.0 + beta)
    return w, w0


def l1_weights(alpha: float, n: int) -> np.ndarray:
    """L1 weights ``b_j = (j + 1)**(1 - alpha) - j**(1 - alpha)``, ``j = 0..n-1``."""
    return _first_difference_pow(np.arange(n), 1.0 - alpha)


# }}}


# {{{ array kernels


def _rl_left_values(beta: float, tau: float, f: np.ndarray) -> np.ndarray:
    n = f.size - 1
    w, w0 = rl_weights(beta, n)
    out = np.zeros_like(f)
    out[1:] = np.convolve(f[1:], w)[:n] + w0 * f[0]
    return out * (tau**beta / math.gamma(beta + 2.0))


def _caputo_l1_values(alpha: float, tau: float, f: np.ndarray) -> np.ndarray:
    n = f.size - 1
    b = l1_weights(alpha, n)
    out = np.zeros_like(f)
    out[1:] = np.convolve(np.diff(f), b)[:n]
    return out * (tau ** (-alpha) / math.gamma(2.0 - alpha))


def nodal_derivative(f: GridFunction) -> GridFunction:
    """Node values of ``f'`` from the cell difference quotients.

    Interior nodes average the two adjacent quotients (the central
    difference); the end nodes extrapolate linearly from the nearest two.
    """
    q = np.diff(f.values) / f.grid.tau
    d = np.empty_like(f.values)
    d[1:-1] = 0.5 * (q[:-1] + q[1:])
    if q.size > 1:
        d[0] = 1.5 * q[0] - 0.5 * q[1]
        d[-1] = 1.5 * q[-1] - 0.5 * q[-2]
    else:
        d[0] = d[-1] = q[0]
    return GridFunction(f.grid, d)


# }}}


# {{{ operators


def rl_left_integral(beta: float, f: GridFunction) -> GridFunction:
    r"""Left Riemann-Liouville integral
    :math:`{}_0D^{-\beta} f(t) = \frac{1}{\Gamma(\beta)} \int_0^t (t - s)^{\beta - 1} f(s) \, ds`.
    """
    beta = check_order(beta, "beta")
    return GridFunction(f.grid, _rl_left_values(beta, f.grid.tau, f.values))


def rl_right_integral(beta: float, f: GridFunction) -> GridFunction:
    r"""Right Riemann-Liouville integral
    :math:`D_T^{-\beta} f(t) = \frac{1}{\Gamma(\beta)} \int_t^T (s - t)^{\beta - 1} f(s) \, ds`,
    obtained from :func:`rl_left_integral` under ``t -> T - t``.
    """
    return rl_left_integral(beta, f.reflect()).reflect()


def caputo_l1(alpha: float, f: GridFunction) -> GridFunction:
    """Caputo derivative by the L1 scheme.

    The value at ``t_0`` is not defined by the scheme and is stored as 0.
    """
    alpha = check_order(alpha, "alpha")
    return GridFunction(f.grid, _caputo_l1_values(alpha, f.grid.tau, f.values))


def caputo_via_rl(alpha: float, f: GridFunction) -> GridFunction:
    """Caputo derivative as the composition ``{}_0D^{alpha - 1}`` of ``d/dt``.

    The derivative is taken from cell difference quotients interpolated to the
    nodes (see :func:`nodal_derivative`) and then integrated with
    :func:`rl_left_integral` of order ``1 - alpha``.
    """
    alpha = check_order(alpha, "alpha")
    out = rl_left_integral(1.0 - alpha, nodal_derivative(f))
    out.values[0] = 0.0
    return out


# }}}
