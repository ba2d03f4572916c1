"""Command-line front end.

    multisearch continuous --n 64 --ell 4 --energy 1 --steps 50
    multisearch discrete --n 4 --ell 1 --iterations 3 --format csv
    multisearch stopping --n 1000000 --ell 1
    multisearch classical --n 100 --ell 9 --trials 1000000 --seed 7
    multisearch verify --suite lower-bound --n 16 --ell 2 --energy 1

Exit codes: 0 success, 1 invalid arguments or unwritable output,
2 a cross-check or verification property failed.

CSV schemas (one header row, 15 significant digits):
    continuous  t,p_analytic,p_full,abs_err
    discrete    m,p_closed,p_full,abs_err
    stopping    theta,alpha,j_first_order,j_real,j_int,e_at_j_int,residual,iterations
    classical   n,ell,exact_mean,pmf_mean,with_replacement_mean,mc_mean,mc_stderr,trials,seed,shards
    verify      suite,property,passed,value,bound,detail
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import classical, continuous, discrete, stopping, verify
from .core import SearchInstance, success_probability

OUTPUT_DIR_ENV = "MULTISEARCH_OUTPUT_DIR"
COMMANDS = ("continuous", "discrete", "stopping", "classical", "verify")
CONTINUOUS_TOL = 1e-8
DISCRETE_TOL = 1e-9

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    ell: int | None = None
    marked: tuple[int, ...] | None = None
    energy: float | None = None
    t_max: float | None = None
    steps: int = 50
    iterations: int | None = None
    theta: float | None = None
    alpha: float | None = None
    trials: int = 100_000
    seed: int = 0
    shards: int = 1
    suite: str = "all"
    format: str = "csv"
    output: str | None = None
    timing: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.marked is not None and self.ell is not None:
            raise UsageError("give either --ell or --marked, not both")
        if self.energy is not None and self.command not in ("continuous", "verify"):
            raise UsageError("--energy applies only to continuous and verify")
        if self.command == "continuous" and self.energy is None:
            raise UsageError("continuous requires --energy")
        if self.energy is not None and not self.energy > 0:
            raise UsageError(f"--energy must be positive, got {self.energy}")
        if self.steps < 1:
            raise UsageError("--steps must be >= 1")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if self.shards < 1:
            raise UsageError("--shards must be >= 1")
        if self.iterations is not None and self.iterations < 0:
            raise UsageError("--iterations must be >= 0")
        if self.t_max is not None and self.t_max < 0:
            raise UsageError("--t-max must be >= 0")
        if self.command in ("continuous", "discrete", "classical") and self.n is None:
            raise UsageError(f"{self.command} requires --n")
        if self.command in ("continuous", "discrete") and self.ell is None and self.marked is None:
            raise UsageError(f"{self.command} requires --ell or --marked")
        if self.command == "classical" and self.ell is None:
            raise UsageError("classical requires --ell")
        if self.command == "stopping":
            direct = self.theta is not None or self.alpha is not None
            if direct and (self.theta is None or self.alpha is None):
                raise UsageError("stopping needs both --theta and --alpha")
            if not direct and (self.n is None or (self.ell is None and self.marked is None)):
                raise UsageError("stopping needs --n with --ell/--marked, or --theta and --alpha")
        if self.command == "verify":
            if self.suite not in (*verify.SUITES, "all"):
                raise UsageError(f"unknown suite {self.suite!r}")

    def instance(self) -> SearchInstance:
        try:
            if self.marked is not None:
                return SearchInstance(self.n, self.marked)
            return SearchInstance.first(self.n, self.ell)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def echo(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("output")
        d.pop("timing")
        if d["marked"] is not None:
            d["marked"] = list(d["marked"])
        return d


@dataclass
class RunReport:
    config: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    duration_s: float | None = None

    def to_dict(self) -> dict[str, Any]:
        d = {
            "command": self.config["command"],
            "config": self.config,
            "columns": self.columns,
            "rows": self.rows,
            "summary": self.summary,
            "residuals": self.residuals,
            "passed": self.passed,
        }
        if self.duration_s is not None:
            d["duration_s"] = self.duration_s
        return _plain(d)


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        return float(obj)
    return obj


# --- commands ----------------------------------------------------------------


def _run_continuous(cfg: RunConfig) -> RunReport:
    spec = continuous.HamiltonianSpec(cfg.instance(), cfg.energy)
    big_t = continuous.optimal_time(spec)
    t_max = 2 * big_t if cfg.t_max is None else cfg.t_max
    grid = np.linspace(0.0, t_max, cfg.steps)
    rows = []
    for sample in continuous.probability_curve(spec, grid):
        p_full = success_probability(continuous.evolve_full(spec, sample.t), spec.instance)
        rows.append([sample.t, sample.probability, p_full, abs(p_full - sample.probability)])
    worst = max(r[3] for r in rows)
    return RunReport(
        config=cfg.echo(),
        columns=["t", "p_analytic", "p_full", "abs_err"],
        rows=rows,
        summary={"T": big_t, "y": spec.y, "lower_bound": continuous.lower_bound(
            spec.instance.n, spec.instance.ell, spec.energy)},
        residuals={"max_abs_err": worst, "tolerance": CONTINUOUS_TOL},
        passed=worst < CONTINUOUS_TOL,
    )


def _run_discrete(cfg: RunConfig) -> RunReport:
    inst = cfg.instance()
    m_star, p_star = discrete.optimal_iterations(inst)
    m_max = 2 * m_star if cfg.iterations is None else cfg.iterations
    trace = discrete.iterate(inst, m_max)
    rows = [[m, pc, pf, abs(pf - pc)] for m, pf, pc in trace.rows()]
    ang = discrete.grover_angles(inst.n, inst.ell)
    worst = trace.max_abs_error()
    return RunReport(
        config=cfg.echo(),
        columns=["m", "p_closed", "p_full", "abs_err"],
        rows=rows,
        summary={"m_star": m_star, "p_at_m_star": p_star, "theta": ang.theta, "alpha": ang.alpha},
        residuals={"max_abs_err": worst, "tolerance": DISCRETE_TOL},
        passed=worst < DISCRETE_TOL,
    )


def _run_stopping(cfg: RunConfig) -> RunReport:
    if cfg.theta is not None:
        prob = stopping.StoppingProblem(cfg.theta, cfg.alpha)
    else:
        inst = cfg.instance()
        prob = stopping.StoppingProblem.from_search(inst.n, inst.ell)
    sol = stopping.solve(prob)
    row = [prob.theta, prob.alpha, sol.j_first_order, sol.j_real, sol.j_int,
           sol.e_at_j_int, sol.residual, sol.iterations]
    ok = sol.residual is None or sol.residual < 1e-10
    return RunReport(
        config=cfg.echo(),
        columns=["theta", "alpha", "j_first_order", "j_real", "j_int", "e_at_j_int",
                 "residual", "iterations"],
        rows=[row],
        summary=sol.as_dict(),
        residuals={"stationarity": sol.residual},
        passed=ok,
    )


def _run_classical(cfg: RunConfig) -> RunReport:
    try:
        urn = classical.UrnModel(cfg.n, cfg.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    exact = classical.expectation(urn)
    pmf_mean = classical.expectation_from_pmf(urn) if urn.n <= classical.PMF_SUM_CAP else None
    mc_mean, mc_se = classical.monte_carlo(urn, cfg.trials, cfg.seed, shards=cfg.shards)
    row = [urn.n, urn.ell, exact, pmf_mean, classical.with_replacement_expectation(urn),
           mc_mean, mc_se, cfg.trials, cfg.seed, cfg.shards]
    z = abs(mc_mean - float(exact)) / mc_se if mc_se > 0 else 0.0
    return RunReport(
        config=cfg.echo(),
        columns=["n", "ell", "exact_mean", "pmf_mean", "with_replacement_mean",
                 "mc_mean", "mc_stderr", "trials", "seed", "shards"],
        rows=[row],
        summary={"exact_mean": exact, "exact_mean_fraction": f"{exact.numerator}/{exact.denominator}"},
        residuals={
            "pmf_minus_exact": None if pmf_mean is None else pmf_mean - float(exact),
            "mc_z_score": z,
        },
    )


def _run_verify(cfg: RunConfig) -> RunReport:
    checks = verify.run_suite(cfg.suite, n=cfg.n, ell=cfg.ell, energy=cfg.energy, seed=cfg.seed)
    rows = [[c.suite, c.name, c.passed, c.value, c.bound, c.detail] for c in checks]
    failed = [f"{c.suite}.{c.name}" for c in checks if not c.passed]
    return RunReport(
        config=cfg.echo(),
        columns=["suite", "property", "passed", "value", "bound", "detail"],
        rows=rows,
        summary={"checks": len(checks), "failed": failed},
        passed=not failed,
    )


_DISPATCH = {
    "continuous": _run_continuous,
    "discrete": _run_discrete,
    "stopping": _run_stopping,
    "classical": _run_classical,
    "verify": _run_verify,
}


# --- output ------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating, Fraction)):
        return format(float(value), ".15g")
    return str(value)


def render(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit(report: RunReport, fmt: str, destination: str | None) -> None:
    """Write the rendered report to ``destination`` ("-" or None for stdout).

    Files are written to a temporary sibling and renamed into place, so a
    failed write leaves no partial output.
    """
    text = render(report, fmt)
    if destination in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(destination)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        start = time.perf_counter()
        report = _DISPATCH[cfg.command](cfg)
        if cfg.timing:
            report.duration_s = time.perf_counter() - start
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    destination = cfg.output
    if destination is None and os.environ.get(OUTPUT_DIR_ENV):
        destination = str(Path(os.environ[OUTPUT_DIR_ENV]) / f"{cfg.command}.{cfg.format}")
    try:
        emit(report, cfg.format, destination)
    except OSError as exc:
        print(f"error: cannot write {destination}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not report.passed:
        print(f"verification failed: {report.summary.get('failed') or report.residuals}",
              file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# --- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit code 1 instead of argparse's 2
        raise UsageError(message)


def _marked_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--marked expects comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multisearch", description="Multiobject quantum search experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, default_format: str = "csv") -> None:
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--output", "-o", default=None,
                       help=f"output path ('-' for stdout; default stdout or ${OUTPUT_DIR_ENV})")
        p.add_argument("--timing", action="store_true", help="include wall-clock duration (JSON)")

    def instance_args(p: argparse.ArgumentParser, required_n: bool = True) -> None:
        p.add_argument("--n", type=int, required=required_n, help="database size N")
        p.add_argument("--ell", type=int, help="number of marked items; marks 1..ell")
        p.add_argument("--marked", type=_marked_list, help="explicit comma-separated marked indices")

    p = sub.add_parser("continuous", help="P(t) closed form vs full evolution")
    instance_args(p)
    p.add_argument("--energy", type=float, help="energy scale E (required)")
    p.add_argument("--t-max", type=float, help="end of the time grid (default 2T)")
    p.add_argument("--steps", type=int, default=50, help="number of grid points")
    common(p)

    p = sub.add_parser("discrete", help="Grover iteration trace, closed form vs full space")
    instance_args(p)
    p.add_argument("--iterations", type=int, help="last m (default 2 m_star)")
    common(p)

    p = sub.add_parser("stopping", help="optimal restart length")
    instance_args(p, required_n=False)
    p.add_argument("--theta", type=float)
    p.add_argument("--alpha", type=float)
    common(p, default_format="json")

    p = sub.add_parser("classical", help="urn baseline: exact and Monte Carlo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shards", type=int, default=1)
    common(p)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", default="all", choices=(*verify.SUITES, "all"))
    p.add_argument("--n", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--energy", type=float)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    return RunConfig(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
