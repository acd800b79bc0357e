"""Fractional Sobolev norms in time, spectral norms in space, and their
Bochner-type combinations for fields expanded in the Dirichlet sine basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from subdiffusion.fracops import GridFunction, TimeGrid, caputo_via_rl, check_order


# {{{ spatial fields


def dirichlet_eigenvalues(length: float, M: int) -> np.ndarray:
    """Eigenvalues ``(k pi / L)**2``, ``k = 1..M``, of ``-d^2/dx^2`` on ``(0, L)``."""
    if not (length > 0.0):
        raise ValueError(f"length must be positive: got {length!r}")
    if M < 1:
        raise ValueError(f"need at least one mode: got {M!r}")
    k = np.arange(1, M + 1, dtype=np.float64)
    return (k * np.pi / length) ** 2


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Coefficients against ``w_k(x) = sqrt(2/L) sin(k pi x / L)``."""

    length: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=np.float64))
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("coeffs must be a non-empty vector")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coeffs must be finite")
        if not (self.length > 0.0):
            raise ValueError(f"length must be positive: got {self.length!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def M(self) -> int:
        return self.coeffs.size

    @property
    def eigenvalues(self) -> np.ndarray:
        return dirichlet_eigenvalues(self.length, self.M)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        k = np.arange(1, self.M + 1)
        basis = np.sqrt(2.0 / self.length) * np.sin(np.multiply.outer(x, k) * np.pi / self.length)
        return basis @ self.coeffs


@dataclass(frozen=True, eq=False)
class ModeTrajectories:
    """Time samples ``d_k(t_i)`` of every mode, one row per mode."""

    grid: TimeGrid
    length: float
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values[None, :]
        if values.ndim != 2 or values.shape[1] != self.grid.n + 1 or values.shape[0] < 1:
            raise ValueError(
                f"expected shape (M, {self.grid.n + 1}), got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("trajectories must be finite")
        if not (self.length > 0.0):
            raise ValueError(f"length must be positive: got {self.length!r}")
        object.__setattr__(self, "values", values)

    @property
    def M(self) -> int:
        return self.values.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return dirichlet_eigenvalues(self.length, self.M)

    def mode(self, k: int) -> GridFunction:
        """Trajectory of mode ``k`` (1-based)."""
        return GridFunction(self.grid, self.values[k - 1])

    def at(self, i: int) -> SpectralField:
        """Spatial field at node ``t_i``."""
        return SpectralField(self.length, self.values[:, i])


# }}}


# {{{ Slobodeckij seminorm


def _beta_int(a: int, b: int) -> float:
    return math.factorial(a) * math.factorial(b) / math.factorial(a + b + 1)


def _int_pow_1_2(e: float) -> float:
    """``int_1^2 r**(e - 1) dr``, continuous through ``e = 0``."""
    x = e * math.log(2.0)
    if abs(x) < 1.0e-12:
        return math.log(2.0)
    return math.log(2.0) * math.expm1(x) / x


def _square_moment(a: int, b: int, p: float) -> float:
    """``int_0^1 int_0^1 u**a v**b (u + v)**p du dv`` in closed form.

    Splitting along ``r = u + v`` with ``u = r theta``: the triangle ``r < 1``
    gives a Beta integral, and on ``1 < r < 2`` the admissible ``theta`` range
    ``[1 - 1/r, 1/r]`` makes the inner integral a polynomial in ``1/r``.
    """
    d = a + b + p
    if d <= -2.0:
        raise ValueError("moment diverges")

    inner = P.polymul(P.polypow([0.0, 1.0], a), P.polypow([1.0, -1.0], b))
    Q = P.polyint(inner)
    # Q(x) - Q(1 - x) as a polynomial in x
    c = P.polysub(Q, _compose(Q, [1.0, -1.0]))

    upper = sum(cj * _int_pow_1_2(d + 2.0 - j) for j, cj in enumerate(c))
    return _beta_int(a, b) / (d + 2.0) + upper


def _compose(p: np.ndarray, q: list[float]) -> np.ndarray:
    """Coefficients of ``p(q(x))``."""
    out = np.zeros(1)
    for coeff in reversed(p):
        out = P.polyadd(P.polymul(out, q), [coeff])
    return out


@lru_cache(maxsize=64)
def _near_diagonal_constants(alpha: float) -> tuple[float, float, float]:
    """Kernel moments for a cell with itself and with its neighbour (``tau = 1``)."""
    p = -2.0 * alpha - 1.0
    same = 2.0 / ((2.0 - 2.0 * alpha) * (3.0 - 2.0 * alpha))
    return same, _square_moment(2, 0, p), _square_moment(1, 1, p)


@lru_cache(maxsize=64)
def _far_moments(alpha: float, n: int, order: int = 10) -> np.ndarray:
    """``K_ab(d) = int int x**a y**b (d + y - x)**p dx dy`` over
    ``[-1/2, 1/2]^2`` for ``d = 2..n-1``, rows ``(00, 10, 01, 20, 02, 11)``.

    The kernel is analytic on the square once ``d >= 2``, so tensor
    Gauss-Legendre is accurate to rounding.
    """
    p = -2.0 * alpha - 1.0
    u, w = np.polynomial.legendre.leggauss(order)
    u, w = 0.5 * u, 0.5 * w
    x, y = u[:, None], u[None, :]
    ww = w[:, None] * w[None, :]

    d = np.arange(2, n, dtype=np.float64)[:, None, None]
    kern = ww * (d + y - x) ** p
    monomials = (np.ones_like(x * y), x + 0 * y, y + 0 * x, x**2 + 0 * y, y**2 + 0 * x, x * y)
    moments = np.array([np.sum(kern * m, axis=(1, 2)) for m in monomials])
    moments.setflags(write=False)
    return moments


def _slobodeckij_sq_rows(alpha: float, tau: float, f: np.ndarray) -> np.ndarray:
    """Squared seminorm of every row of ``f`` (node samples on a uniform grid).

    The piecewise-linear interpolant is integrated against the kernel: in
    closed form for a cell with itself and with its neighbours, and with
    precomputed kernel moments for cells two or more apart.
    """
    f = np.atleast_2d(f)
    n = f.shape[1] - 1
    same, i20, i11 = _near_diagonal_constants(alpha)

    slope = np.diff(f, axis=1) / tau
    scale = tau ** (3.0 - 2.0 * alpha)

    total = same * scale * np.sum(slope**2, axis=1)
    m1, m2 = slope[:, :-1], slope[:, 1:]
    total += 2.0 * scale * np.sum(i20 * (m1**2 + m2**2) + 2.0 * i11 * m1 * m2, axis=1)

    if n > 2:
        # on cells i and j = i + d, with offsets x, y from the midpoints,
        # f(s) - f(t) = (fm_j - fm_i) + tau (m_j y - m_i x)
        K00, K10, K01, K20, K02, K11 = _far_moments(alpha, n)
        fm = 0.5 * (f[:, :-1] + f[:, 1:])
        h = tau * slope
        far = np.zeros(f.shape[0])
        for idx, d in enumerate(range(2, n)):
            jump = fm[:, d:] - fm[:, :-d]
            mi, mj = h[:, :-d], h[:, d:]
            far += np.sum(
                K00[idx] * jump**2
                + 2.0 * jump * (K01[idx] * mj - K10[idx] * mi)
                + K02[idx] * mj**2
                + K20[idx] * mi**2
                - 2.0 * K11[idx] * mi * mj,
                axis=1,
            )
        total += 2.0 * tau ** (1.0 - 2.0 * alpha) * far

    return total


def slobodeckij_seminorm(alpha: float, f: GridFunction) -> float:
    r"""Slobodeckij seminorm
    :math:`\left(\int_J\int_J |f(s) - f(t)|^2 / |s - t|^{2\alpha+1}\,ds\,dt\right)^{1/2}`.
    """
    alpha = check_order(alpha, "alpha")
    return float(np.sqrt(_slobodeckij_sq_rows(alpha, f.grid.tau, f.values)[0]))


# }}}


# {{{ time norms


def _l2_time_sq_rows(grid: TimeGrid, f: np.ndarray) -> np.ndarray:
    return np.atleast_2d(f) ** 2 @ grid.trapezoid_weights()


def l2_time_norm(f: GridFunction) -> float:
    """Trapezoidal :math:`L_2(J)` norm."""
    return float(np.sqrt(_l2_time_sq_rows(f.grid, f.values)[0]))


def open_start_weights(grid: TimeGrid) -> np.ndarray:
    """Trapezoid on ``[t_1, T]`` with the first cell carried by the value at ``t_1``.

    For quantities that are only defined, or only regular, for ``t > 0``.
    """
    w = grid.trapezoid_weights()
    w[0] = 0.0
    w[1] = 1.5 * grid.tau
    return w


def seminorm_via_rl(alpha: float, f: GridFunction) -> float:
    """:math:`L_2(J)` norm of the Caputo derivative of *f*.

    For ``1/2 < alpha < 1`` this is equivalent to the Slobodeckij seminorm.
    """
    alpha = check_order(alpha, "alpha", 0.5, 1.0)
    d = caputo_via_rl(alpha, f).values
    return float(np.sqrt(np.sum(open_start_weights(f.grid) * d**2)))


# }}}


# {{{ spatial and Bochner norms


def _check_smoothness(s: float) -> float:
    s = float(s)
    if not (-1.0 <= s <= 1.0):
        raise ValueError(f"smoothness index must lie in [-1, 1]: got {s!r}")
    return s


def spatial_norm(s: float, field: SpectralField) -> float:
    r"""Spectral :math:`H^s(\Omega)` norm :math:`(\sum_k \lambda_k^s g_k^2)^{1/2}`."""
    s = _check_smoothness(s)
    return float(np.sqrt(np.sum(field.eigenvalues**s * field.coeffs**2)))


def bochner_l2_norm(s: float, traj: ModeTrajectories, open_start: bool = False) -> float:
    r""":math:`L_2(J; H^s(\Omega))` norm.

    With *open_start* the sample at ``t = 0`` is left out (see
    :func:`open_start_weights`), which matters when ``u(0)`` does not lie in
    :math:`H^s`.
    """
    s = _check_smoothness(s)
    w = open_start_weights(traj.grid) if open_start else traj.grid.trapezoid_weights()
    return float(np.sqrt(np.sum(traj.eigenvalues**s * (traj.values**2 @ w))))


def bochner_seminorm(alpha: float, s: float, traj: ModeTrajectories) -> float:
    r""":math:`H^\alpha(J; H^s(\Omega))` seminorm.

    The spectral norm is a weighted Euclidean norm, so the double integral
    splits into per-mode Slobodeckij seminorms.
    """
    alpha = check_order(alpha, "alpha")
    s = _check_smoothness(s)
    per_mode = _slobodeckij_sq_rows(alpha, traj.grid.tau, traj.values)
    return float(np.sqrt(np.sum(traj.eigenvalues**s * per_mode)))


def full_solution_norm(traj: ModeTrajectories, alpha: float) -> tuple[float, float]:
    r"""The pair :math:`(\|u\|_{L_2(J;\tilde H^1)}, \|u\|_{H^\alpha(J;H^{-1})})`.

    The energy norm skips the sample at ``t = 0``: the initial value need not
    lie in :math:`\tilde H^1`, and a trapezoid weight on it would grow without
    bound as modes are added.
    """
    energy = bochner_l2_norm(1.0, traj, open_start=True)
    weak = math.hypot(bochner_l2_norm(-1.0, traj), bochner_seminorm(alpha, -1.0, traj))
    return energy, weak


# }}}
