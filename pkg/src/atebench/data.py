"""Core data model: observations, samples, estimate results, and estimand truths.

Samples are stored column-wise as numpy arrays (one row per unit) and are
frozen after construction, so they can be shared freely across worker
processes. Binary treatment and outcome are kept as 0/1 integers so weighted
sums need no conversion step.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import DomainViolation, LengthMismatch, PositivityViolation

# Slack for the positivity bound checks: generated propensities can sit exactly
# on delta / 1 - delta, where 1 - (1 - p) may round by one ulp.
_BOUND_TOL = 1e-12


class Category(Enum):
    """Propensity usage of an estimator; drives report line styles."""

    TRUE_PROPENSITY = "TruePropensity"
    ESTIMATED_PROPENSITY = "EstimatedPropensity"
    NO_PROPENSITY = "NoPropensity"


@dataclass(frozen=True)
class Observation:
    """One unit: covariate w in [0, 1], treatment x in {0, 1}, outcome y in {0, 1}."""

    w: float
    x: int
    y: int


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Sample:
    """An i.i.d. sample handed to estimators, with its positivity bound delta.

    ``pi`` holds the true propensity scores when they are known (always the
    case for generated data); estimators that do not use the true score simply
    ignore it.
    """

    w: np.ndarray
    x: np.ndarray
    y: np.ndarray
    delta: float
    pi: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", _frozen_array(self.w, np.float64))
        object.__setattr__(self, "x", _frozen_array(self.x, np.int64))
        object.__setattr__(self, "y", _frozen_array(self.y, np.int64))
        if self.pi is not None:
            object.__setattr__(self, "pi", _frozen_array(self.pi, np.float64))

    @property
    def n(self) -> int:
        return self.w.size

    def observations(self) -> tuple[Observation, ...]:
        """Record-level view of the column arrays."""
        return tuple(
            Observation(float(w), int(x), int(y))
            for w, x, y in zip(self.w, self.x, self.y)
        )

    @classmethod
    def from_observations(
        cls,
        observations,
        delta: float,
        true_propensity=None,
    ) -> "Sample":
        obs = list(observations)
        return cls(
            w=[o.w for o in obs],
            x=[o.x for o in obs],
            y=[o.y for o in obs],
            delta=delta,
            pi=true_propensity,
        )


def validate_sample(sample: Sample) -> None:
    """Check every Sample invariant; raise naming the first violation.

    Raises:
        DomainViolation: w outside [0, 1], or non-binary x or y.
        LengthMismatch: column lengths disagree.
        PositivityViolation: a propensity outside [delta, 1 - delta], or a
            delta outside (0, 0.5) when propensities are present.
    """
    n = sample.w.size
    if n == 0:
        raise DomainViolation("sample is empty")
    for name, arr in (("x", sample.x), ("y", sample.y)):
        if arr.size != n:
            raise LengthMismatch(f"{name} has length {arr.size}, expected {n}")
    bad = np.flatnonzero((sample.w < 0.0) | (sample.w > 1.0))
    if bad.size:
        i = int(bad[0])
        raise DomainViolation(f"w out of [0, 1] at index {i}: {sample.w[i]}")
    for name, arr in (("x", sample.x), ("y", sample.y)):
        bad = np.flatnonzero((arr != 0) & (arr != 1))
        if bad.size:
            i = int(bad[0])
            raise DomainViolation(f"{name} not in {{0, 1}} at index {i}: {arr[i]}")
    if sample.pi is not None:
        if sample.pi.size != n:
            raise LengthMismatch(
                f"true_propensity has length {sample.pi.size}, expected {n}"
            )
        if not 0.0 < sample.delta < 0.5:
            raise PositivityViolation(
                f"delta must lie in (0, 0.5), got {sample.delta}"
            )
        lo = sample.delta - _BOUND_TOL
        hi = 1.0 - sample.delta + _BOUND_TOL
        bad = np.flatnonzero((sample.pi < lo) | (sample.pi > hi))
        if bad.size:
            i = int(bad[0])
            raise PositivityViolation(
                f"propensity outside [{sample.delta}, {1.0 - sample.delta}] "
                f"at index {i}: {sample.pi[i]}"
            )


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.lower <= self.upper:
            raise DomainViolation(
                f"interval bounds out of order: ({self.lower}, {self.upper})"
            )
        if not 0.0 < self.alpha < 1.0:
            raise DomainViolation(f"alpha must lie in (0, 1), got {self.alpha}")

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class EstimateResult:
    """Point estimates for both arms plus estimator metadata.

    ``ate_hat`` is always ``mu1_hat - mu0_hat`` to full floating precision;
    it is derived here rather than accepted as input. ``flags`` records
    nuisance-fit anomalies (non-convergence, degenerate folds) that occurred
    while producing the estimate.
    """

    mu1_hat: float
    mu0_hat: float
    category: Category
    ci: ConfidenceInterval | None = None
    flags: tuple[str, ...] = ()
    ate_hat: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ate_hat", self.mu1_hat - self.mu0_hat)

    def with_ci(self, ci: ConfidenceInterval | None) -> "EstimateResult":
        return replace(self, ci=ci)

    def with_flags(self, *extra: str) -> "EstimateResult":
        return replace(self, flags=self.flags + tuple(extra))


@dataclass(frozen=True)
class TrueEstimands:
    """Population values of the estimands under a data-generating process."""

    mu1: float
    mu0: float
    ate: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ate", self.mu1 - self.mu0)
