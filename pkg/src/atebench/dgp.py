"""The three simulation data-generating processes, plus a custom sharp-null DGP.

Each process draws W ~ Uniform(0, 1) and uses a single probability function
p(w) for both the treatment assignment P(X = 1 | W) and the outcome
P(Y = 1 | W), under a sharp null in which both potential outcomes equal the
observed outcome. Treatment and outcome are drawn from independent uniforms
given W, so unconfoundedness holds by construction and the true ATE is 0.

Experiment 3 partitions [0, 1] into B = 100 n equal bins whose probability
alternates between 0.9 and 0.1; bins are 1-indexed via j = floor(w * B) + 1,
with w = 1.0 clamped into the last bin, so the first bin carries 0.9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy import integrate

from .data import Sample, TrueEstimands
from .errors import DomainViolation

# Global minimum of 0.2 sin(15 w) + 0.4 w + 0.1 over [0, 1], frozen from a
# 1e-6 grid scan plus bounded polish and floored so positivity holds exactly.
EXPERIMENT2_DELTA = 0.0238832804


def logistic(z):
    """Numerically stable e^z / (1 + e^z); scalar in, scalar out."""
    arr = np.asarray(z, dtype=np.float64)
    out = np.empty_like(arr)
    pos = arr >= 0.0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ez = np.exp(arr[~pos])
    out[~pos] = ez / (1.0 + ez)
    if out.ndim == 0:
        return float(out)
    return out


def _require_unit_interval(w: np.ndarray) -> None:
    if w.size and (np.min(w) < 0.0 or np.max(w) > 1.0):
        flat = np.atleast_1d(w)
        bad = np.flatnonzero((flat < 0.0) | (flat > 1.0))[0]
        raise DomainViolation(f"covariate outside [0, 1]: {flat[bad]}")


def experiment1_prob(w):
    """Logistic model: p(w) = logistic(0.5 w + 0.1)."""
    arr = np.asarray(w, dtype=np.float64)
    _require_unit_interval(arr)
    return logistic(0.5 * arr + 0.1)


def experiment2_prob(w):
    """Smooth sinusoidal model: p(w) = 0.2 sin(15 w) + 0.4 w + 0.1 (radians)."""
    arr = np.asarray(w, dtype=np.float64)
    _require_unit_interval(arr)
    out = 0.2 * np.sin(15.0 * arr) + 0.4 * arr + 0.1
    if out.ndim == 0:
        return float(out)
    return out


def experiment3_prob(w, n: int):
    """Alternating-bin model over B = 100 n bins: 0.9 in odd bins, 0.1 in even."""
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    arr = np.asarray(w, dtype=np.float64)
    _require_unit_interval(arr)
    bins = 100 * int(n)
    j0 = np.minimum(np.floor(arr * bins).astype(np.int64), bins - 1)
    out = np.where(j0 % 2 == 0, 0.9, 0.1)
    if out.ndim == 0:
        return float(out)
    return out


class DgpKind(Enum):
    EXPERIMENT1 = 1
    EXPERIMENT2 = 2
    EXPERIMENT3 = 3
    CUSTOM = 0


@dataclass(frozen=True)
class DgpSpec:
    """A sharp-null data-generating process selected by kind.

    Custom specs wrap an arbitrary vectorized probability function mapping
    [0, 1] into (0, 1); an explicit delta may be supplied, otherwise it is
    derived by a grid scan.
    """

    kind: DgpKind
    prob: Callable | None = None
    custom_delta: float | None = None

    @property
    def n_dependent(self) -> bool:
        """Whether the bin layout (and hence p) depends on the sample size."""
        return self.kind is DgpKind.EXPERIMENT3

    @classmethod
    def experiment(cls, number: int) -> "DgpSpec":
        kinds = {1: DgpKind.EXPERIMENT1, 2: DgpKind.EXPERIMENT2, 3: DgpKind.EXPERIMENT3}
        if number not in kinds:
            raise DomainViolation(f"experiment must be 1, 2 or 3, got {number}")
        return cls(kind=kinds[number])

    @classmethod
    def custom(cls, prob: Callable, delta: float | None = None) -> "DgpSpec":
        return cls(kind=DgpKind.CUSTOM, prob=prob, custom_delta=delta)

    def probability(self, w, n: int):
        """Evaluate p(w) for this process at sample size n."""
        if self.kind is DgpKind.EXPERIMENT1:
            return experiment1_prob(w)
        if self.kind is DgpKind.EXPERIMENT2:
            return experiment2_prob(w)
        if self.kind is DgpKind.EXPERIMENT3:
            return experiment3_prob(w, n)
        arr = np.asarray(w, dtype=np.float64)
        _require_unit_interval(arr)
        out = np.asarray(self.prob(arr), dtype=np.float64)
        if out.ndim == 0:
            return float(out)
        return out


def delta_of(spec: DgpSpec, n: int) -> float:
    """Positivity bound min(min_w p(w), 1 - max_w p(w)) for the process."""
    if spec.kind is DgpKind.EXPERIMENT1:
        return 1.0 - logistic(0.6)
    if spec.kind is DgpKind.EXPERIMENT2:
        return EXPERIMENT2_DELTA
    if spec.kind is DgpKind.EXPERIMENT3:
        return 0.1
    if spec.custom_delta is not None:
        return spec.custom_delta
    grid = np.linspace(0.0, 1.0, 1_000_001)
    p = np.asarray(spec.prob(grid), dtype=np.float64)
    return float(min(np.min(p), 1.0 - np.max(p)))


def true_estimands(spec: DgpSpec, n: int) -> TrueEstimands:
    """E[p(W)] for both arms; exact where a closed form exists.

    Under the sharp null mu1 = mu0, so the true ATE is exactly 0.
    """
    if spec.kind is DgpKind.EXPERIMENT1:
        mu = 2.0 * (math.log1p(math.exp(0.6)) - math.log1p(math.exp(0.1)))
    elif spec.kind is DgpKind.EXPERIMENT3:
        # Bins have equal length and B = 100 n is even, so p averages to 1/2.
        mu = 0.5
    else:
        fn = (
            experiment2_prob
            if spec.kind is DgpKind.EXPERIMENT2
            else lambda w: spec.prob(np.asarray(w, dtype=np.float64))
        )
        mu, _ = integrate.quad(lambda w: float(fn(w)), 0.0, 1.0, epsabs=1e-9, limit=200)
    return TrueEstimands(mu1=mu, mu0=mu)


@dataclass(frozen=True)
class GeneratedUnit:
    """One generated unit including both potential outcomes."""

    w: float
    pi: float
    y0: int
    y1: int
    x: int
    y: int


class GeneratedUnits:
    """Column-wise view of generated units, indexable as GeneratedUnit records.

    Estimators never see this; it exists so oracle tests can check
    consistency (y = y0 (1 - x) + y1 x) and the sharp null (y0 = y1).
    """

    def __init__(self, w, pi, y0, y1, x, y):
        self.w = w
        self.pi = pi
        self.y0 = y0
        self.y1 = y1
        self.x = x
        self.y = y

    def __len__(self) -> int:
        return self.w.size

    def __getitem__(self, i: int) -> GeneratedUnit:
        return GeneratedUnit(
            w=float(self.w[i]),
            pi=float(self.pi[i]),
            y0=int(self.y0[i]),
            y1=int(self.y1[i]),
            x=int(self.x[i]),
            y=int(self.y[i]),
        )


def generate_sample(
    spec: DgpSpec, n: int, rng: np.random.Generator
) -> tuple[Sample, GeneratedUnits]:
    """Draw one i.i.d. sample of size n from the process.

    Draw order is fixed (w, then x, then y), so the result is bit-identical
    for a given generator state. X and Y come from independent uniforms given
    W, enforcing unconfoundedness exactly.
    """
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    w = rng.random(n)
    p = np.asarray(spec.probability(w, n), dtype=np.float64)
    x = (rng.random(n) < p).astype(np.int64)
    y = (rng.random(n) < p).astype(np.int64)
    sample = Sample(w=w, x=x, y=y, delta=delta_of(spec, n), pi=p)
    units = GeneratedUnits(w=w, pi=p, y0=y.copy(), y1=y.copy(), x=x, y=y)
    return sample, units
