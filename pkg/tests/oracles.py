"""Reference values computed independently of the package under test."""

from __future__ import annotations

import math

import mpmath


def ml_series(alpha: float, beta: float, z: float, dps: int = 50) -> float:
    """Plain Taylor series in arbitrary precision, with precision raised
    until the value stops changing."""
    previous = None
    while True:
        with mpmath.workdps(dps):
            a, b, x = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
            total = mpmath.mpf(0)
            k = 0
            while True:
                term = x**k * mpmath.rgamma(a * k + b)
                total += term
                if k > 10 and abs(term) < mpmath.mpf(10) ** (-dps) * (1 + abs(total)):
                    break
                k += 1
            value = float(total)
        if previous is not None and value == previous:
            return value
        previous = value
        dps *= 2


def ml_laplace(alpha: float, x: float) -> float:
    """``E_alpha(-x)`` for ``0 < alpha < 1``, ``x >= 0`` from the spectral
    representation ``E_alpha(-t^alpha) = int_0^inf exp(-r t) K_alpha(r) dr``."""
    with mpmath.workdps(30):
        a = mpmath.mpf(alpha)
        t = mpmath.mpf(x) ** (1 / a)
        s, c = mpmath.sin(a * mpmath.pi), mpmath.cos(a * mpmath.pi)

        def K(r):
            return r ** (a - 1) * s / (mpmath.pi * (r ** (2 * a) + 2 * r**a * c + 1))

        return float(mpmath.quad(lambda r: mpmath.exp(-r * t) * K(r), [0, 1, mpmath.inf]))


def ml_half(x: float) -> float:
    """``E_{1/2}(-x) = exp(x^2) erfc(x)``."""
    with mpmath.workdps(30):
        return float(mpmath.exp(mpmath.mpf(x) ** 2) * mpmath.erfc(x))


def power_rule(mu: float, beta: float, t):
    """``{}_0D^{-beta} t^mu = Gamma(mu + 1) / Gamma(mu + 1 + beta) t^(mu + beta)``."""
    return math.gamma(mu + 1.0) / math.gamma(mu + 1.0 + beta) * t ** (mu + beta)
