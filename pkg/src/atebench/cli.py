"""Command-line front end: run simulations from a config file and render reports.

Exit codes: 0 success, 2 configuration/input error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .csvio import read_aggregates, write_aggregates, write_replications
from .charts import write_report_charts
from .errors import AteBenchError, ConfigParseError
from .montecarlo import run_grid
from .runconfig import load_run_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atebench",
        description="Benchmark ATE estimators on simulated trials with known propensities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the Monte Carlo grid from a config file")
    sim.add_argument("--config", required=True, help="path to the run configuration")
    sim.add_argument("--seed", type=int, default=None, help="override master seed")
    sim.add_argument("--workers", type=int, default=None, help="override worker count")
    sim.add_argument("--out-dir", default=None, help="override output directory")
    sim.set_defaults(func=cmd_simulate)

    rep = sub.add_parser("report", help="render RMSE charts from an aggregate CSV")
    rep.add_argument("--in", dest="input", required=True, help="aggregate.csv path")
    rep.add_argument("--out", required=True, help="output directory for charts")
    rep.add_argument(
        "--zoom-true-pi", action="store_true",
        help="restrict charts to estimators using the true propensity score",
    )
    rep.add_argument(
        "--omit", default="",
        help="comma-separated estimator names to drop from the charts",
    )
    rep.add_argument("--log-y", action="store_true", help="log-scale RMSE axis")
    rep.set_defaults(func=cmd_report)
    return parser


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigParseError(f"{name}: expected an integer, got {raw!r}") from exc


def cmd_simulate(args) -> int:
    run_config = load_run_config(args.config)
    mc = run_config.mc

    seed = args.seed if args.seed is not None else _env_int("SIM_SEED")
    if seed is not None:
        mc = dataclasses.replace(mc, master_seed=seed)
    workers = args.workers if args.workers is not None else _env_int("SIM_WORKERS")
    if workers is None:
        workers = run_config.workers
    if workers < 1:
        raise ConfigParseError("workers: must be >= 1")
    out_dir = args.out_dir if args.out_dir is not None else run_config.out_dir

    os.makedirs(out_dir, exist_ok=True)

    def progress(experiment, n, done, total):
        print(f"[{done}/{total}] experiment {experiment}, n={n}", file=sys.stderr)

    rows, reports = run_grid(mc, progress=progress, workers=workers)
    replications_path = os.path.join(out_dir, "replications.csv")
    aggregate_path = os.path.join(out_dir, "aggregate.csv")
    write_replications(replications_path, rows)
    write_aggregates(aggregate_path, reports)
    print(replications_path)
    print(aggregate_path)
    return EXIT_OK


def cmd_report(args) -> int:
    reports = read_aggregates(args.input)
    omit = tuple(name for name in args.omit.split(",") if name)
    written = write_report_charts(
        reports, args.out,
        omit=omit, zoom_true_pi=args.zoom_true_pi, log_y=args.log_y,
    )
    for path in written:
        print(path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AteBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
