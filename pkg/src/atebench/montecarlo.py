"""Replication engine and metric aggregation for the benchmark study.

A cell is one (experiment, n) pair; each of its replications draws a fresh
sample from a seed derived deterministically from (master_seed, experiment,
n, rep_index) and evaluates every rostered estimator on that same sample, so
estimator comparisons are paired. Replications are independent and may run
in worker processes; rows are sorted before aggregation so output depends
only on the configuration, never on scheduling.
"""

from __future__ import annotations

import hashlib
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from .data import Category, TrueEstimands
from .dgp import DgpSpec, generate_sample, true_estimands
from .errors import DomainViolation, EmptyCell, UnknownEstimator
from .estimators import REGISTRY
from .inference import hoeffding_ci_ate, normal_ci_ate

_MASK64 = (1 << 64) - 1


def _mix64(z: int) -> int:
    """splitmix64 finalizer: a 64-bit avalanche permutation."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, experiment: int, n: int, rep_index: int) -> int:
    """Collision-resistant 64-bit seed for one replication."""
    h = _mix64(master_seed & _MASK64)
    for value in (experiment, n, rep_index):
        h = _mix64(h ^ (value & _MASK64))
    return h


def derive_substream(seed: int, label: str) -> int:
    """Independent child seed for labelled randomness within a replication."""
    digest = hashlib.blake2b(label.encode(), digest_size=8).digest()
    return _mix64(seed ^ int.from_bytes(digest, "little"))


def sample_checksum(sample) -> str:
    """Short content hash of a sample; equal rows imply the same sample."""
    h = hashlib.blake2b(digest_size=8)
    h.update(np.ascontiguousarray(sample.w).tobytes())
    h.update(np.ascontiguousarray(sample.x).tobytes())
    h.update(np.ascontiguousarray(sample.y).tobytes())
    if sample.pi is not None:
        h.update(np.ascontiguousarray(sample.pi).tobytes())
    h.update(np.float64(sample.delta).tobytes())
    return h.hexdigest()


@dataclass(frozen=True)
class EstimatorSetting:
    """One roster entry: a canonical estimator name plus option overrides."""

    name: str
    options: tuple = ()  # sorted (key, value) pairs; kept hashable/picklable

    def __post_init__(self) -> None:
        if self.name not in REGISTRY:
            raise UnknownEstimator(f"unknown estimator {self.name!r}")
        object.__setattr__(self, "options", tuple(sorted(dict(self.options).items())))

    @property
    def opts(self) -> dict:
        return dict(self.options)

    @property
    def ci_method(self) -> str:
        return str(self.opts.get("ci", REGISTRY[self.name].default_ci))


@dataclass(frozen=True)
class McConfig:
    experiments: tuple[int, ...] = (1, 2, 3)
    n_grid: tuple[int, ...] = (50, 100, 200, 500, 1000, 2000, 5000)
    reps: int = 500
    master_seed: int = 20260809
    alpha: float = 0.05
    roster: tuple[EstimatorSetting, ...] = field(
        default_factory=lambda: tuple(EstimatorSetting(name) for name in REGISTRY)
    )
    delta_override: float | None = None

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise DomainViolation(f"reps must be >= 1, got {self.reps}")
        if not self.experiments or any(e not in (1, 2, 3) for e in self.experiments):
            raise DomainViolation(f"experiments must be a subset of {{1,2,3}}, got {self.experiments}")
        if not self.n_grid or list(self.n_grid) != sorted(set(self.n_grid)):
            raise DomainViolation("n_grid must be nonempty and strictly ascending")
        if any(n < 1 for n in self.n_grid):
            raise DomainViolation("n_grid entries must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise DomainViolation(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.roster:
            raise DomainViolation("roster must name at least one estimator")


@dataclass(frozen=True)
class ReplicationRow:
    experiment: int
    n: int
    rep_index: int
    estimator: str
    estimate: float | None
    ci_lower: float | None
    ci_upper: float | None
    flags: str
    sample_checksum: str
    wall_time: float = 0.0  # not serialized


@dataclass(frozen=True)
class McCellReport:
    experiment: int
    n: int
    estimator: str
    category: Category
    reps_used: int
    bias: float
    sd: float
    rmse: float
    coverage: float | None
    mean_ci_width: float | None


def _attach_ci(method: str, result, sample, config: McConfig):
    if method == "hoeffding":
        delta = config.delta_override if config.delta_override is not None else sample.delta
        return hoeffding_ci_ate(result.ate_hat, sample.n, delta, config.alpha)
    if method == "normal":
        return normal_ci_ate(sample, result.ate_hat, config.alpha)
    if method == "none":
        return None
    raise DomainViolation(f"unknown ci method {method!r}")


def run_replication(
    config: McConfig, experiment: int, n: int, rep_index: int
) -> list[ReplicationRow]:
    """Generate one sample and evaluate every rostered estimator on it."""
    seed = derive_seed(config.master_seed, experiment, n, rep_index)
    rng = np.random.default_rng(seed)
    spec = DgpSpec.experiment(experiment)
    sample, _ = generate_sample(spec, n, rng)
    checksum = sample_checksum(sample)

    rows = []
    for setting in config.roster:
        est_def = REGISTRY[setting.name]
        est_rng = np.random.default_rng(derive_substream(seed, setting.name))
        started = time.perf_counter()
        try:
            result = est_def.run(sample, est_rng, setting.opts)
            flags = list(result.flags)
            try:
                ci = _attach_ci(setting.ci_method, result, sample, config)
            except Exception as exc:
                ci = None
                flags.append(f"ci_error:{type(exc).__name__}")
            rows.append(
                ReplicationRow(
                    experiment=experiment,
                    n=n,
                    rep_index=rep_index,
                    estimator=setting.name,
                    estimate=result.ate_hat,
                    ci_lower=None if ci is None else ci.lower,
                    ci_upper=None if ci is None else ci.upper,
                    flags=";".join(flags),
                    sample_checksum=checksum,
                    wall_time=time.perf_counter() - started,
                )
            )
        except Exception as exc:  # estimator failures never abort a replication
            rows.append(
                ReplicationRow(
                    experiment=experiment,
                    n=n,
                    rep_index=rep_index,
                    estimator=setting.name,
                    estimate=None,
                    ci_lower=None,
                    ci_upper=None,
                    flags=f"error:{type(exc).__name__}",
                    sample_checksum=checksum,
                    wall_time=time.perf_counter() - started,
                )
            )
    return rows


def aggregate(rows, truth) -> list[McCellReport]:
    """Summarize replication rows per (experiment, n, estimator) cell.

    ``truth`` is a TrueEstimands applied to every row, or a mapping from
    experiment number to TrueEstimands. Rows with missing estimates are
    excluded and reflected in ``reps_used``.
    """
    rows = list(rows)
    if not rows:
        raise EmptyCell("no replication rows to aggregate")
    if isinstance(truth, TrueEstimands):
        truth_by_exp = {row.experiment: truth for row in rows}
    else:
        truth_by_exp = dict(truth)

    groups: dict[tuple, list[ReplicationRow]] = {}
    for row in rows:
        groups.setdefault((row.experiment, row.n, row.estimator), []).append(row)

    reports = []
    for (experiment, n, estimator), cell_rows in sorted(groups.items()):
        target = truth_by_exp[experiment].ate
        estimates = np.array(
            [r.estimate for r in cell_rows if r.estimate is not None], dtype=np.float64
        )
        reps_used = estimates.size
        if reps_used == 0:
            bias = sd = rmse = float("nan")
        else:
            bias = float(np.mean(estimates) - target)
            sd = float(np.std(estimates, ddof=1)) if reps_used > 1 else 0.0
            rmse = float(np.sqrt(np.mean((estimates - target) ** 2)))
        with_ci = [
            r for r in cell_rows
            if r.estimate is not None and r.ci_lower is not None and r.ci_upper is not None
        ]
        if with_ci:
            coverage = float(
                np.mean([r.ci_lower <= target <= r.ci_upper for r in with_ci])
            )
            mean_width = float(np.mean([r.ci_upper - r.ci_lower for r in with_ci]))
        else:
            coverage = None
            mean_width = None
        reports.append(
            McCellReport(
                experiment=experiment,
                n=n,
                estimator=estimator,
                category=REGISTRY[estimator].category,
                reps_used=reps_used,
                bias=bias,
                sd=sd,
                rmse=rmse,
                coverage=coverage,
                mean_ci_width=mean_width,
            )
        )
    return reports


def _replication_worker(args) -> list[ReplicationRow]:
    config, experiment, n, rep_index = args
    return run_replication(config, experiment, n, rep_index)


def run_grid(
    config: McConfig,
    progress=None,
    workers: int = 1,
) -> tuple[list[ReplicationRow], list[McCellReport]]:
    """Run every (experiment, n) cell for the configured replication count.

    Output is identical for any worker count: per-replication seeds are
    derived from the cell coordinates and rows are sorted afterwards.
    """
    if workers < 1:
        raise DomainViolation(f"workers must be >= 1, got {workers}")
    cells = [(e, n) for e in config.experiments for n in config.n_grid]
    all_rows: list[ReplicationRow] = []

    pool = None
    if workers > 1:
        pool = multiprocessing.get_context("fork").Pool(processes=workers)
    try:
        for done, (experiment, n) in enumerate(cells, start=1):
            tasks = [(config, experiment, n, rep) for rep in range(config.reps)]
            if pool is None:
                results = map(_replication_worker, tasks)
            else:
                chunk = max(1, config.reps // (workers * 8))
                results = pool.imap(_replication_worker, tasks, chunksize=chunk)
            for rows in results:
                all_rows.extend(rows)
            if progress is not None:
                progress(experiment, n, done, len(cells))
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    all_rows.sort(key=lambda r: (r.experiment, r.n, r.estimator, r.rep_index))
    truths = {
        e: true_estimands(DgpSpec.experiment(e), config.n_grid[0])
        for e in config.experiments
    }
    reports = aggregate(all_rows, truths)
    return all_rows, reports
