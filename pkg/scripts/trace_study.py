"""Distance ||u(t) - g||_s of the homogeneous solution from rough initial
data, for several smoothness indices s, printed as CSV over time."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from subdiffusion.fracops import TimeGrid
from subdiffusion.studies import trace_study


@dataclass(frozen=True)
class Config:
    alpha: float = 0.75
    delta: float = 0.1
    s_values: tuple[float, ...] = (-1.0, -0.5, 0.0)
    n: int = 4096
    modes: int = 256
    every: int = 64


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=Config.alpha)
    parser.add_argument("--delta", type=float, default=Config.delta)
    parser.add_argument("--n", type=int, default=Config.n)
    parser.add_argument("--modes", type=int, default=Config.modes)
    args = parser.parse_args()
    cfg = Config(alpha=args.alpha, delta=args.delta, n=args.n, modes=args.modes)

    grid = TimeGrid(1.0, cfg.n)
    columns = trace_study(cfg.alpha, cfg.delta, list(cfg.s_values), grid, M=cfg.modes)
    for col in columns:
        print(f"# s={col.s}: {'asserted' if col.asserted else 'no assertion'}")

    print("t," + ",".join(f"s={col.s}" for col in columns))
    steps = sorted({1, 2, 4, 8, 16, 32, *range(cfg.every, cfg.n + 1, cfg.every)})
    for i in steps:
        print(f"{grid.t[i]:.6g}," + ",".join(f"{col.distance[i]:.6e}" for col in columns))

    for col in columns:
        ratio = col.distance[1] / col.distance[cfg.n // 4]
        print(f"# s={col.s}: ||u(T/n) - g|| / ||u(T/4) - g|| = {ratio:.4f}")


if __name__ == "__main__":
    main()
