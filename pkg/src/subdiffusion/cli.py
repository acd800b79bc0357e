"""Batch experiment driver.

Every subcommand writes CSV: a ``#`` comment line echoing the configuration,
a header row, then data rows with 17 significant digits. Exit codes are 0 on
success, 2 on invalid input and 3 when a Mittag-Leffler value could not be
certified.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from subdiffusion.fracops import TimeGrid, check_order
from subdiffusion.l1_oracle import cross_validate
from subdiffusion.mittag_leffler import CertificationError, MLParams, ml
from subdiffusion.norms import ModeTrajectories, SpectralField, full_solution_norm
from subdiffusion.spectral_solver import DEFAULT_DELTA, ProblemSpec, solve
from subdiffusion.studies import max_ratio, stability_study, trace_study

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3


def fmt(x: float) -> str:
    return f"{x:.17g}"


# {{{ configuration


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated parameters of one subcommand run."""

    command: str
    alpha: tuple[float, ...] = ()
    beta: float = 1.0
    delta: float = DEFAULT_DELTA
    grid: int = 256
    modes: int = 32
    seed: Optional[int] = None
    trials: int = 20
    final_time: float = 1.0
    z: tuple[float, ...] = ()
    s: tuple[float, ...] = ()
    problem: Optional[str] = None
    refinements: int = 4
    out: Optional[str] = None

    def validate(self) -> ExperimentConfig:
        if self.command == "ml":
            if len(self.alpha) != 1:
                raise ValueError("ml takes exactly one --alpha")
            MLParams(self.alpha[0], self.beta)
            if not self.z:
                raise ValueError("ml needs at least one z value")
            if not all(math.isfinite(z) for z in self.z):
                raise ValueError("z values must be finite")
        elif self.command in ("solve", "convergence"):
            if self.problem is None:
                raise ValueError(f"{self.command} needs --problem")
            if self.command == "convergence" and self.refinements < 2:
                raise ValueError("--refinements must be at least 2")
        elif self.command == "trace-study":
            if len(self.alpha) != 1:
                raise ValueError("trace-study takes exactly one --alpha")
            self._check_common()
            if not self.s:
                raise ValueError("trace-study needs at least one s value")
            for s in self.s:
                if not (-1.0 <= s <= 1.0):
                    raise ValueError(f"s must lie in [-1, 1]: got {s!r}")
        elif self.command == "stability-study":
            if not self.alpha:
                raise ValueError("stability-study needs at least one --alpha")
            if self.seed is None:
                raise ValueError("stability-study needs --seed")
            if self.trials < 1:
                raise ValueError("--trials must be positive")
            self._check_common()
        else:
            raise ValueError(f"unknown command: {self.command!r}")
        return self

    def _check_common(self) -> None:
        for a in self.alpha:
            check_order(a, "alpha", 0.5, 1.0)
            r = 1.0 - 1.0 / a + self.delta
            if not (self.delta > 0.0) or not (-1.0 <= r <= 1.0):
                raise ValueError(f"delta = {self.delta!r} is not admissible for alpha = {a!r}")
        if self.grid < 2:
            raise ValueError("--grid must be at least 2")
        if self.modes < 1:
            raise ValueError("--modes must be positive")
        if not (self.final_time > 0.0):
            raise ValueError("--final-time must be positive")

    def echo(self) -> str:
        return "# config: " + json.dumps(asdict(self), sort_keys=True)


# }}}


# {{{ problem files


def load_problem(path: str) -> ProblemSpec:
    """Read a JSON problem description.

    Keys: ``alpha``, ``T``, ``n_time``, ``L``, ``M``, ``g_coeffs`` and
    ``forcing``, which is ``"zero"``, ``{"constant": c}`` for the spatially
    and temporally constant source ``f = c``, or ``{"samples": rows}`` with one
    row of ``n_time + 1`` node values per mode.
    """
    try:
        with open(path, encoding="utf-8") as infile:
            data = json.load(infile)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read problem file {path!r}: {exc}") from exc
    return problem_from_dict(data)


def problem_from_dict(data: dict) -> ProblemSpec:
    required = ("alpha", "T", "n_time", "L", "M", "g_coeffs")
    missing = [key for key in required if key not in data]
    if missing:
        raise ValueError(f"problem is missing keys: {', '.join(missing)}")

    M = data["M"]
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be a positive integer: got {M!r}")
    n = data["n_time"]
    if not isinstance(n, int):
        raise ValueError(f"n_time must be an integer: got {n!r}")

    grid = TimeGrid(float(data["T"]), n)
    length = float(data["L"])
    g = np.asarray(data["g_coeffs"], dtype=np.float64)
    if g.shape != (M,):
        raise ValueError(f"g_coeffs must have M = {M} entries, got shape {g.shape}")
    g_field = SpectralField(length, g)

    forcing = data.get("forcing", "zero")
    if forcing == "zero":
        values = np.zeros((M, n + 1))
    elif isinstance(forcing, dict) and set(forcing) == {"constant"}:
        k = np.arange(1, M + 1)
        # projection of the constant onto sqrt(2/L) sin(k pi x / L)
        proj = math.sqrt(2.0 / length) * length / (k * math.pi) * (1.0 - (-1.0) ** k)
        values = np.repeat((float(forcing["constant"]) * proj)[:, None], n + 1, axis=1)
    elif isinstance(forcing, dict) and set(forcing) == {"samples"}:
        values = np.asarray(forcing["samples"], dtype=np.float64)
        if values.shape != (M, n + 1):
            raise ValueError(f"forcing samples must have shape ({M}, {n + 1}), got {values.shape}")
    else:
        raise ValueError(f"unrecognized forcing: {forcing!r}")

    return ProblemSpec(float(data["alpha"]), grid, g_field, ModeTrajectories(grid, length, values))


# }}}


# {{{ commands


def cmd_ml(config: ExperimentConfig, out) -> int:
    params = MLParams(config.alpha[0], config.beta)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["z", "value", "error"])

    status = EXIT_OK
    for z in config.z:
        try:
            writer.writerow([fmt(z), fmt(ml(params, z)), ""])
        except CertificationError as exc:
            writer.writerow([fmt(z), "nan", str(exc)])
            status = EXIT_UNCERTIFIED
    return status


def cmd_solve(config: ExperimentConfig, out) -> int:
    problem = load_problem(config.problem)
    sol = solve(problem)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "k", "d_k"])
    t = problem.grid.t
    for i, ti in enumerate(t):
        for k in range(problem.M):
            writer.writerow([fmt(ti), k + 1, fmt(sol.traj.values[k, i])])

    energy, weak = full_solution_norm(sol.traj, problem.alpha)
    out.write(f"# energy_norm={fmt(energy)} weak_norm={fmt(weak)}\n")
    return EXIT_OK


def cmd_convergence(config: ExperimentConfig, out) -> int:
    report = cross_validate(load_problem(config.problem), config.refinements)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "distance", "fitted_order"])
    for n, dist in report.rows():
        writer.writerow([n, fmt(dist), fmt(report.order)])
    return EXIT_OK


def cmd_trace_study(config: ExperimentConfig, out) -> int:
    grid = TimeGrid(config.final_time, config.grid)
    columns = trace_study(config.alpha[0], config.delta, config.s, grid, M=config.modes)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["s", "t", "distance", "assertion"])
    for col in columns:
        flag = "asserted" if col.asserted else "no assertion"
        for t, dist in zip(col.t, col.distance):
            writer.writerow([fmt(col.s), fmt(t), fmt(dist), flag])
    return EXIT_OK


def cmd_stability_study(config: ExperimentConfig, out) -> int:
    rows = stability_study(
        config.alpha, config.trials, config.seed, config.delta, M=config.modes, n=config.grid
    )
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["alpha", "trial", "ratio", "caputo_ratio"])
    for row in rows:
        writer.writerow([fmt(row.alpha), row.trial, fmt(row.ratio), fmt(row.caputo_ratio)])
    for alpha, ratio in max_ratio(rows).items():
        writer.writerow([fmt(alpha), "max", fmt(ratio), ""])
    return EXIT_OK


COMMANDS = {
    "ml": cmd_ml,
    "solve": cmd_solve,
    "convergence": cmd_convergence,
    "trace-study": cmd_trace_study,
    "stability-study": cmd_stability_study,
}


# }}}


# {{{ entry point


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subdiffusion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", help="output CSV path (default: stdout)")
        return p

    p = add("ml", "evaluate E_{alpha,beta}(z)")
    p.add_argument("--alpha", type=_floats, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--z", type=_floats, required=True, help="comma-separated arguments")

    p = add("solve", "solve a problem file")
    p.add_argument("--problem", required=True)

    p = add("convergence", "compare the spectral and L1 solutions under refinement")
    p.add_argument("--problem", required=True)
    p.add_argument("--refinements", type=int, default=4)

    p = add("trace-study", "distance of u(t) to the rough initial value")
    p.add_argument("--alpha", type=_floats, required=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--s", type=_floats, required=True, help="comma-separated smoothness indices")
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--modes", type=int, default=256)
    p.add_argument("--final-time", type=float, default=1.0)

    p = add("stability-study", "solution over data norm for seeded random problems")
    p.add_argument("--alpha", type=_floats, required=True, help="comma-separated orders")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--modes", type=int, default=32)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = vars(build_parser().parse_args(argv))
    try:
        config = ExperimentConfig(**args).validate()
        buffer = io.StringIO()
        buffer.write(config.echo() + "\n")
        status = COMMANDS[config.command](config, buffer)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    # write only after the whole run succeeded
    if config.out is None:
        sys.stdout.write(buffer.getvalue())
    else:
        with open(config.out, "w", encoding="utf-8", newline="") as outfile:
            outfile.write(buffer.getvalue())
    return status


# }}}
