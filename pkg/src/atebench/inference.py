"""Confidence intervals: finite-sample Hoeffding bounds and a normal comparison.

The Hoeffding interval needs only the known positivity bound delta: each
inverse-weighted summand lies in [0, 1/delta], so the classic concentration
bound gives an honest 1 - alpha interval of width O(n^{-1/2}) regardless of
how complicated the propensity function is. The ATE variant is the same bound
applied to the per-unit score y x / pi - y (1 - x) / (1 - pi), whose range is
2 / delta; it is a derived extension and reports label it as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import norm

from .data import ConfidenceInterval, Sample
from .errors import DomainViolation, MissingPropensity


class CiMethod(Enum):
    HOEFFDING = "hoeffding"
    NORMAL = "normal"


@dataclass(frozen=True)
class IntervalSpec:
    alpha: float
    method: CiMethod

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise DomainViolation(f"alpha must lie in (0, 1), got {self.alpha}")


def _check_args(n: int, delta: float, alpha: float) -> None:
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    if not 0.0 < delta < 0.5:
        raise DomainViolation(f"delta must lie in (0, 0.5), got {delta}")
    if not 0.0 < alpha < 1.0:
        raise DomainViolation(f"alpha must lie in (0, 1), got {alpha}")


def hoeffding_halfwidth_mu1(n: int, delta: float, alpha: float) -> float:
    """sqrt(log(2 / alpha) / (2 n delta^2))."""
    _check_args(n, delta, alpha)
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n * delta * delta))


def hoeffding_ci_mu1(
    mu1_hat: float, n: int, delta: float, alpha: float, truncate: bool = False
) -> ConfidenceInterval:
    """Symmetric Hoeffding interval around the arm-1 mean estimate.

    Not truncated to [0, 1] by default, keeping the width bit-exact against
    the closed form; truncation can only improve coverage.
    """
    hw = hoeffding_halfwidth_mu1(n, delta, alpha)
    lo, hi = mu1_hat - hw, mu1_hat + hw
    if truncate:
        lo, hi = max(lo, 0.0), min(hi, 1.0)
    return ConfidenceInterval(lower=lo, upper=hi, alpha=alpha)


def hoeffding_halfwidth_ate(n: int, delta: float, alpha: float) -> float:
    """sqrt(2 log(2 / alpha) / (n delta^2)); exactly twice the arm-1 halfwidth."""
    _check_args(n, delta, alpha)
    return math.sqrt(2.0 * math.log(2.0 / alpha) / (n * delta * delta))


def hoeffding_ci_ate(
    ate_hat: float, n: int, delta: float, alpha: float, truncate: bool = False
) -> ConfidenceInterval:
    hw = hoeffding_halfwidth_ate(n, delta, alpha)
    lo, hi = ate_hat - hw, ate_hat + hw
    if truncate:
        lo, hi = max(lo, -1.0), min(hi, 1.0)
    return ConfidenceInterval(lower=lo, upper=hi, alpha=alpha)


def ht_scores(sample: Sample) -> np.ndarray:
    """Per-unit inverse-weighted ATE score y x / pi - y (1 - x) / (1 - pi)."""
    if sample.pi is None:
        raise MissingPropensity("sample carries no true propensity scores")
    return (sample.y * sample.x) / sample.pi - (sample.y * (1 - sample.x)) / (
        1.0 - sample.pi
    )


def normal_ci_ate(sample: Sample, ate_hat: float, alpha: float) -> ConfidenceInterval:
    """Normal-approximation interval from the sample variance of the HT score."""
    if not 0.0 < alpha < 1.0:
        raise DomainViolation(f"alpha must lie in (0, 1), got {alpha}")
    scores = ht_scores(sample)
    n = scores.size
    if n < 2:
        raise DomainViolation("normal interval needs at least 2 observations")
    s2 = float(np.var(scores, ddof=1))
    z = float(norm.ppf(1.0 - alpha / 2.0))
    hw = z * math.sqrt(s2 / n)
    return ConfidenceInterval(lower=ate_hat - hw, upper=ate_hat + hw, alpha=alpha)
