"""Results CSV schemas: per-replication rows and per-cell aggregates.

Floats are serialized with 17 significant digits so write -> read is the
identity; missing values are empty fields. Both schemas carry a mandatory
header row and use RFC-4180-style quoting.
"""

from __future__ import annotations

import csv

from .data import Category
from .errors import MalformedCsv, UnknownEstimator
from .estimators import REGISTRY
from .montecarlo import McCellReport, ReplicationRow

REPLICATION_HEADER = [
    "experiment", "n", "rep_index", "estimator", "estimate",
    "ci_lower", "ci_upper", "flags", "sample_checksum",
]
AGGREGATE_HEADER = [
    "experiment", "n", "estimator", "category", "reps_used",
    "bias", "sd", "rmse", "coverage", "mean_ci_width",
]


def _fmt_float(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


def _parse_float(text: str, field: str) -> float | None:
    if text == "":
        return None
    try:
        return float(text)
    except ValueError as exc:
        raise MalformedCsv(f"bad float in column {field!r}: {text!r}") from exc


def _parse_int(text: str, field: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise MalformedCsv(f"bad integer in column {field!r}: {text!r}") from exc


def _check_estimator(name: str) -> str:
    if name not in REGISTRY:
        raise UnknownEstimator(f"estimator {name!r} is not in the canonical roster")
    return name


def write_replications(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPLICATION_HEADER)
        for r in rows:
            writer.writerow([
                r.experiment, r.n, r.rep_index, r.estimator,
                _fmt_float(r.estimate), _fmt_float(r.ci_lower),
                _fmt_float(r.ci_upper), r.flags, r.sample_checksum,
            ])


def read_replications(path) -> list[ReplicationRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != REPLICATION_HEADER:
            raise MalformedCsv(f"unexpected replications header: {header}")
        rows = []
        for line in reader:
            if len(line) != len(REPLICATION_HEADER):
                raise MalformedCsv(f"row has {len(line)} fields, expected {len(REPLICATION_HEADER)}")
            rows.append(
                ReplicationRow(
                    experiment=_parse_int(line[0], "experiment"),
                    n=_parse_int(line[1], "n"),
                    rep_index=_parse_int(line[2], "rep_index"),
                    estimator=_check_estimator(line[3]),
                    estimate=_parse_float(line[4], "estimate"),
                    ci_lower=_parse_float(line[5], "ci_lower"),
                    ci_upper=_parse_float(line[6], "ci_upper"),
                    flags=line[7],
                    sample_checksum=line[8],
                )
            )
    return rows


def write_aggregates(path, reports) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        for r in reports:
            writer.writerow([
                r.experiment, r.n, r.estimator, r.category.value, r.reps_used,
                _fmt_float(r.bias), _fmt_float(r.sd), _fmt_float(r.rmse),
                _fmt_float(r.coverage), _fmt_float(r.mean_ci_width),
            ])


def read_aggregates(path) -> list[McCellReport]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != AGGREGATE_HEADER:
            raise MalformedCsv(f"unexpected aggregate header: {header}")
        reports = []
        for line in reader:
            if len(line) != len(AGGREGATE_HEADER):
                raise MalformedCsv(f"row has {len(line)} fields, expected {len(AGGREGATE_HEADER)}")
            try:
                category = Category(line[3])
            except ValueError as exc:
                raise MalformedCsv(f"unknown category {line[3]!r}") from exc
            bias = _parse_float(line[5], "bias")
            sd = _parse_float(line[6], "sd")
            rmse = _parse_float(line[7], "rmse")
            if bias is None or sd is None or rmse is None:
                raise MalformedCsv("bias, sd and rmse are mandatory")
            reports.append(
                McCellReport(
                    experiment=_parse_int(line[0], "experiment"),
                    n=_parse_int(line[1], "n"),
                    estimator=_check_estimator(line[2]),
                    category=category,
                    reps_used=_parse_int(line[4], "reps_used"),
                    bias=bias,
                    sd=sd,
                    rmse=rmse,
                    coverage=_parse_float(line[8], "coverage"),
                    mean_ci_width=_parse_float(line[9], "mean_ci_width"),
                )
            )
    return reports
