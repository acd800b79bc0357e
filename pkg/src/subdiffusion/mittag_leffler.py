"""Two-parameter Mittag-Leffler function on the real line.

.. math::

    E_{\\alpha,\\beta}(z) = \\sum_{k=0}^\\infty \\frac{z^k}{\\Gamma(\\alpha k + \\beta)}

Two evaluation routes are used:

* a Taylor series summed in extended precision (``mpmath``), with the working
  precision raised until the rounding error is certified below tolerance;
* the asymptotic expansion
  :math:`E_{\\alpha,\\beta}(z) \\approx -\\sum_{k\\ge1} z^{-k}/\\Gamma(\\beta-\\alpha k)`
  for :math:`z \\le -Z_{switch}` and :math:`0 < \\alpha \\le 1`.

The array entry points (:func:`ml_array`, :func:`ml_deriv_array`) replace the
Taylor branch by a piecewise Chebyshev table built once per ``(alpha, beta)``
from the Taylor branch and checked against it off the interpolation nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as C

#: target accuracy (absolute-or-relative) of every value returned here
TOL = 1.0e-10

# internal target for the asymptotic remainder and the tables, well below TOL
_ASYM_TOL = 1.0e-14
_TABLE_TOL = 1.0e-13
_MAX_DPS = 4000


class CertificationError(ArithmeticError):
    """Raised when a value cannot be certified to :data:`TOL`."""


# {{{ gamma function

_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(x: float) -> float:
    """Euler's Gamma function via the Lanczos approximation (g=7, n=9).

    Relative accuracy is about 1e-15 on (0, 171.6); negative non-integer
    arguments go through the reflection formula. Positive integers are exact.
    """
    x = float(x)
    if x == math.floor(x):
        if x <= 0.0:
            raise ValueError(f"gamma has a pole at {x}")
        if x <= 171.0:
            return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x > 171.62:
        raise OverflowError(f"gamma({x}) overflows")

    x -= 1.0
    a = _LANCZOS_P[0]
    t = x + _LANCZOS_G + 0.5
    for i in range(1, len(_LANCZOS_P)):
        a += _LANCZOS_P[i] / (x + i)

    # t**(x + 0.5) overflows for x > ~140, so split the power
    p = t ** (0.5 * (x + 0.5))
    return math.sqrt(2.0 * math.pi) * p * (p * math.exp(-t)) * a


def rgamma(x: float) -> float:
    """Reciprocal Gamma function, an entire function (zero at the poles)."""
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x < 0.5:
        # 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        return math.sin(math.pi * x) * gamma(1.0 - x) / math.pi
    if x > 171.62:
        return 0.0
    return 1.0 / gamma(x)


# }}}


# {{{ parameters


@dataclass(frozen=True)
class MLParams:
    """Orders of :math:`E_{\\alpha,\\beta}`."""

    alpha: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 2.0) or not math.isfinite(self.alpha):
            raise ValueError(f"alpha must lie in (0, 2]: got {self.alpha!r}")
        if not (self.beta > 0.0) or not math.isfinite(self.beta):
            raise ValueError(f"beta must be positive: got {self.beta!r}")


# }}}


# {{{ Taylor branch


def _log10_peak(alpha: float, beta: float, x: float) -> tuple[float, int]:
    """Log10 of the largest Taylor term magnitude and the index where it occurs."""
    if x == 0.0:
        return -math.lgamma(beta) / math.log(10.0), 0

    lx = math.log(x)
    best, kbest = -math.inf, 0
    k = 0
    while True:
        v = k * lx - math.lgamma(alpha * k + beta)
        if v > best:
            best, kbest = v, k
        elif k > kbest + 5 and v < best - 5.0:
            break
        k += 1

    return best / math.log(10.0), kbest


class _Coefficients:
    """Lazily extended ``1 / Gamma(alpha k + beta)`` at a fixed precision."""

    def __init__(self, alpha: float, beta: float, dps: int):
        self.dps = dps
        with mpmath.workdps(dps):
            self.a = mpmath.mpf(alpha)
            self.b = mpmath.mpf(beta)
        self.values: list = []

    def __getitem__(self, k: int):
        while len(self.values) <= k:
            with mpmath.workdps(self.dps):
                self.values.append(mpmath.rgamma(self.a * len(self.values) + self.b))
        return self.values[k]


@lru_cache(maxsize=64)
def _coefficients(alpha: float, beta: float, dps: int) -> _Coefficients:
    return _Coefficients(alpha, beta, dps)


def _taylor_length(alpha: float, beta: float, x: float, dps: int) -> int:
    """Number of Taylor terms after which the tail is below ``10**(-dps)``.

    Past the peak the terms decay super-geometrically; once the ratio is below
    1/2 the neglected tail is bounded by twice the last term kept.
    """
    _, k = _log10_peak(alpha, beta, x)
    if x == 0.0:
        return 1

    lx = math.log(x)
    limit = -(dps + 1) * math.log(10.0)
    prev = k * lx - math.lgamma(alpha * k + beta)
    while True:
        k += 1
        v = k * lx - math.lgamma(alpha * k + beta)
        if v <= limit and v - prev <= -math.log(2.0):
            return k + 1
        prev = v


def _taylor_sum(alpha: float, beta: float, z: float, dps: int) -> tuple[mpmath.mpf, int]:
    # precision is rounded up so that nearby arguments share coefficients
    dps = 10 * math.ceil(dps / 10)
    coeffs = _coefficients(alpha, beta, dps)
    nterms = _taylor_length(alpha, beta, abs(z), dps)
    coeffs[nterms - 1]
    with mpmath.workdps(dps):
        # every Horner partial value times z^j is bounded by the sum of the
        # term magnitudes, so the rounding bound matches direct summation
        s = mpmath.polyval(coeffs.values[nterms - 1 :: -1], mpmath.mpf(z))
        return +s, nterms


def _ml_taylor(alpha: float, beta: float, z: float) -> float:
    peak, _ = _log10_peak(alpha, beta, abs(z))
    dps = int(max(peak, 0.0)) + 25

    while True:
        if dps > _MAX_DPS:
            raise CertificationError(
                f"Taylor series for E_{{{alpha},{beta}}}({z}) needs more than "
                f"{_MAX_DPS} digits"
            )

        s, nterms = _taylor_sum(alpha, beta, z, dps)
        value = float(s)
        if value == 0.0:
            dps *= 2
            continue

        # rounding error of the sum is bounded by nterms * 10**(peak - dps)
        log_err = peak + math.log10(nterms + 1) - dps
        log_need = math.log10(abs(value)) + math.log10(TOL) - 3.0
        if log_err <= log_need:
            return value

        dps += int(math.ceil(log_err - log_need)) + 5


# }}}


# {{{ asymptotic branch


@dataclass(frozen=True)
class _Asymptotic:
    #: smallest ``|z|`` at which the expansion is certified
    zswitch: float
    #: coefficients ``1 / Gamma(beta - alpha k)`` for ``k = 1..K``
    coeffs: tuple[float, ...]


def _asymptotic_error(alpha: float, beta: float, x: float, coeffs: list[float]) -> tuple[float, int]:
    """Estimated remainder and number of terms to keep at ``z = -x``.

    The remainder at optimal truncation is taken as the smallest omitted term,
    floored by ``exp(-x**(1/alpha))``: for alpha close to 1 the coefficients
    nearly vanish and that exponential is the actual size of the error
    (exactly so for alpha = 1, where the expansion misses ``exp(z)``).

    Term sizes use the envelope ``|1/Gamma(y)| <= Gamma(1 - y)/pi`` for
    ``y < 1``, so a coefficient that happens to sit near a pole of Gamma
    does not pass for a small remainder.
    """
    floor = -(x ** (1.0 / alpha))
    nonzero = [k for k, c in enumerate(coeffs, start=1) if c != 0.0]
    if alpha == 1.0 and len(nonzero) < len(coeffs) // 2:
        # terminating expansion: 1/Gamma(beta - k) = 0 for k >= beta
        return math.exp(floor), (nonzero[-1] if nonzero else 0)

    lx = math.log(x)
    best, kbest = math.inf, len(coeffs) + 1
    for k in range(1, len(coeffs) + 1):
        y = beta - alpha * k
        if y >= 1.0:
            if coeffs[k - 1] == 0.0:
                continue
            size = math.log(abs(coeffs[k - 1]))
        else:
            size = math.lgamma(1.0 - y) - math.log(math.pi)
        v = size - k * lx
        if v < best:
            best, kbest = v, k
        elif v > best + 2.0:
            break

    return math.exp(max(best, floor)), kbest - 1


@lru_cache(maxsize=256)
def _asymptotic(alpha: float, beta: float) -> _Asymptotic:
    kmax = int(min(400, (beta + 160.0) / alpha))
    coeffs = [rgamma(beta - alpha * k) for k in range(1, kmax + 1)]

    x = 0.5
    while True:
        err, K = _asymptotic_error(alpha, beta, x, coeffs)
        if err <= _ASYM_TOL:
            return _Asymptotic(zswitch=x, coeffs=tuple(coeffs[:K]))
        x *= 1.02


def _ml_asymptotic(asym: _Asymptotic, z):
    """Evaluate the (truncated) asymptotic expansion for scalar or array ``z``."""
    w = 1.0 / np.asarray(z, dtype=np.float64)
    # Horner in 1/z: -sum_k c_k w^k
    acc = np.zeros_like(w)
    for c in reversed(asym.coeffs):
        acc = (acc + c) * w
    return -acc


# }}}


# {{{ scalar interface


def ml(params: MLParams, z: float) -> float:
    """Evaluate :math:`E_{\\alpha,\\beta}(z)` for real *z* to :data:`TOL`.

    :raises CertificationError: if the tolerance cannot be certified.
    """
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"z must be finite: got {z!r}")

    alpha, beta = params.alpha, params.beta
    if z == 0.0:
        return rgamma(beta)

    if z < 0.0 and alpha <= 1.0:
        asym = _asymptotic(alpha, beta)
        if -z >= asym.zswitch:
            return float(_ml_asymptotic(asym, z))

    return _ml_taylor(alpha, beta, z)


def ml_deriv(alpha: float, z: float) -> float:
    """Derivative :math:`E'_{\\alpha,1}(z) = E_{\\alpha,\\alpha}(z) / \\alpha`."""
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1]: got {alpha!r}")

    return ml(MLParams(alpha, alpha), z) / alpha


# }}}


# {{{ array interface


@dataclass(frozen=True)
class _Table:
    h: float
    coeffs: np.ndarray  # (npieces, degree + 1)

    @property
    def zmax(self) -> float:
        return self.h * self.coeffs.shape[0]


def _horner_mp(coeffs: list, x) -> mpmath.mpf:
    s = mpmath.mpf(0)
    for c in reversed(coeffs):
        s = s * x + c
    return s


def _build_table(alpha: float, beta: float, zmax: float) -> _Table:
    h = 1.0
    npieces = max(1, int(math.ceil(zmax / h)))
    xmax = npieces * h

    # Taylor coefficients shared by every node
    peak, _ = _log10_peak(alpha, beta, xmax)
    dps = int(max(peak, 0.0)) + 30
    with mpmath.workdps(dps):
        a, b = mpmath.mpf(alpha), mpmath.mpf(beta)
        eps = mpmath.mpf(10) ** (-dps)
        mx = mpmath.mpf(xmax)
        taylor = []
        k = 0
        while True:
            c = mpmath.rgamma(a * k + b)
            taylor.append(c)
            if k > 2 and abs(c) * mx**k < eps:
                break
            k += 1

    def f(x: np.ndarray) -> np.ndarray:
        with mpmath.workdps(dps):
            return np.array([float(_horner_mp(taylor, -mpmath.mpf(xi))) for xi in x])

    for degree in (20, 32, 48):
        u = C.chebpts1(degree + 1)
        probe = np.cos(np.pi * (np.arange(degree) + 1.0) / (degree + 1))
        coeffs = np.empty((npieces, degree + 1))
        worst = 0.0
        for i in range(npieces):
            left = i * h
            coeffs[i] = C.chebfit(u, f(left + 0.5 * h * (u + 1.0)), degree)

            ref = f(left + 0.5 * h * (probe + 1.0))
            err = np.abs(C.chebval(probe, coeffs[i]) - ref) / np.maximum(1.0, np.abs(ref))
            worst = max(worst, float(np.max(err)))

        if worst <= _TABLE_TOL:
            return _Table(h=h, coeffs=coeffs)

    raise CertificationError(
        f"could not tabulate E_{{{alpha},{beta}}} on [-{xmax}, 0]: "
        f"error {worst:.3e}"
    )


@lru_cache(maxsize=64)
def _table(alpha: float, beta: float) -> _Table:
    return _build_table(alpha, beta, _asymptotic(alpha, beta).zswitch)


def _eval_table(table: _Table, x: np.ndarray) -> np.ndarray:
    npieces, ncoeffs = table.coeffs.shape
    idx = np.clip((x / table.h).astype(np.int64), 0, npieces - 1)
    u = 2.0 * (x - idx * table.h) / table.h - 1.0

    # Clenshaw recurrence with per-point coefficient rows
    c = table.coeffs[idx]
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for j in range(ncoeffs - 1, 0, -1):
        b1, b2 = 2.0 * u * b1 - b2 + c[:, j], b1
    return u * b1 - b2 + c[:, 0]


def ml_array(alpha: float, beta: float, z) -> np.ndarray:
    """Vectorized :math:`E_{\\alpha,\\beta}(z)`; same tolerance as :func:`ml`."""
    params = MLParams(alpha, beta)
    z = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise ValueError("z must be finite")

    flat = z.ravel()
    out = np.empty_like(flat)

    if params.alpha <= 1.0:
        asym = _asymptotic(params.alpha, params.beta)
        far = flat <= -asym.zswitch
        near = (flat <= 0.0) & ~far
        out[far] = _ml_asymptotic(asym, flat[far])
        if np.any(near & (flat != 0.0)):
            out[near] = _eval_table(_table(params.alpha, params.beta), -flat[near])
        out[flat == 0.0] = rgamma(params.beta)
        rest = flat > 0.0
    else:
        rest = np.ones(flat.shape, dtype=bool)

    if np.any(rest):
        out[rest] = [ml(params, zi) for zi in flat[rest]]

    return out.reshape(z.shape)


def ml_deriv_array(alpha: float, z) -> np.ndarray:
    """Vectorized :func:`ml_deriv`."""
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1]: got {alpha!r}")

    return ml_array(alpha, alpha, z) / alpha


# }}}
