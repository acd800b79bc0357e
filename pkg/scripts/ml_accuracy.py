"""Accuracy of the Mittag-Leffler evaluator against closed forms and a
high-precision series, with the decay constant sup (1 + |z|) E(z)."""

from __future__ import annotations

import argparse
import math
import time
from dataclasses import dataclass

import mpmath
import numpy as np

from subdiffusion.mittag_leffler import MLParams, ml, ml_array


@dataclass(frozen=True)
class Config:
    alphas: tuple[float, ...] = (0.6, 0.75, 0.9)
    points: int = 200
    zmax: float = 1.0e6


def series(alpha: float, beta: float, z: float, dps: int = 60) -> float:
    with mpmath.workdps(dps):
        return float(mpmath.nsum(lambda k: mpmath.mpf(z) ** k * mpmath.rgamma(alpha * k + beta), [0, mpmath.inf]))


def closed_forms() -> None:
    start = time.perf_counter()
    exp_err = max(abs(ml(MLParams(1.0, 1.0), z) / math.exp(z) - 1.0) for z in np.linspace(-30.0, 5.0, 351))
    cos_err = max(abs(ml(MLParams(2.0, 1.0), -(x**2)) - math.cos(x)) for x in np.linspace(0.0, 10.0, 201))
    erfc_err = abs(ml(MLParams(0.5, 1.0), -1.0) - math.e * math.erfc(1.0))
    print(f"# closed forms in {time.perf_counter() - start:.3f} s")
    print("check,max_error")
    print(f"exp,{exp_err:.3e}")
    print(f"cos,{cos_err:.3e}")
    print(f"erfc,{erfc_err:.3e}")


def against_series(cfg: Config) -> None:
    print("alpha,z,value,series,relative_error")
    for alpha in cfg.alphas:
        for z in (-0.5, -2.0, -8.0, -20.0):
            value = ml(MLParams(alpha, 1.0), z)
            ref = series(alpha, 1.0, z)
            print(f"{alpha},{z},{value:.17g},{ref:.17g},{abs(value / ref - 1.0):.3e}")


def decay_constant(cfg: Config) -> None:
    print("alpha,sup_scaled,argmax_z")
    for alpha in cfg.alphas:
        z = -np.geomspace(1.0e-4, cfg.zmax, cfg.points)
        scaled = (1.0 - z) * ml_array(alpha, 1.0, z)
        i = int(np.argmax(scaled))
        print(f"{alpha},{scaled[i]:.17g},{z[i]:.6g}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=Config.points)
    args = parser.parse_args()
    cfg = Config(points=args.points)

    closed_forms()
    against_series(cfg)
    decay_constant(cfg)


if __name__ == "__main__":
    main()
