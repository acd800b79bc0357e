"""Maximal stability ratio over seeded random problems, swept over the
fractional order, the regularity margin delta and the number of modes."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from subdiffusion.studies import max_ratio, stability_study


@dataclass(frozen=True)
class Config:
    alphas: tuple[float, ...] = (0.6, 0.75, 0.9)
    deltas: tuple[float, ...] = (0.2, 0.1, 0.05)
    modes: tuple[int, ...] = (16, 32, 64)
    trials: int = 20
    n: int = 256
    seed: int = 0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=Config.trials)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    cfg = Config(trials=args.trials, seed=args.seed)

    print("alpha,delta,modes,max_ratio")
    for delta in cfg.deltas:
        for M in cfg.modes:
            rows = stability_study(cfg.alphas, cfg.trials, seed=cfg.seed, delta=delta, M=M, n=cfg.n)
            for alpha, value in sorted(max_ratio(rows).items()):
                print(f"{alpha},{delta},{M},{value:.6f}", flush=True)


if __name__ == "__main__":
    main()
