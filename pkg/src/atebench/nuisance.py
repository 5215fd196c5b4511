"""Native nuisance learners: weighted logistic regression and 1-NN lookup.

The logistic fit is the plain (weighted) Bernoulli MLE computed by
iteratively reweighted least squares with step-halving, deliberately without
penalization; quasi-separation is handled by capping iterations and clipping
fitted probabilities at prediction time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dgp import logistic
from .errors import DomainViolation, EmptyCandidates, LengthMismatch

MAX_IRLS_ITERATIONS = 100
IRLS_COEF_TOL = 1e-8
PROB_CLIP = 1e-6
# Log-likelihood may dip by rounding noise; anything worse triggers halving.
_LL_TOL = 1e-12


@dataclass(frozen=True)
class LogisticFit:
    """Fitted one-covariate logistic model p(w) = logistic(intercept + slope w)."""

    intercept: float
    slope: float
    converged: bool
    iterations: int

    def predict(self, w):
        return predict_logistic(self, w)


def _weighted_loglik(z, y, kappa) -> float:
    # y z - log(1 + e^z), summed with observation weights; stable for any z.
    return float(np.sum(kappa * (y * z - np.logaddexp(0.0, z))))


def fit_logistic(ws, ys, weights=None) -> LogisticFit:
    """Maximize the weighted Bernoulli log-likelihood by IRLS.

    Convergence is declared when the largest coefficient change falls below
    1e-8, capped at 100 iterations. When all responses are identical the MLE
    is unbounded, so the constant-probability fit (intercept = clipped
    log-odds of the mean, slope = 0) is returned with ``converged=False``
    rather than failing.
    """
    fit, _ = _fit_logistic_with_path(ws, ys, weights)
    return fit


def _fit_logistic_with_path(ws, ys, weights=None) -> tuple[LogisticFit, list]:
    """IRLS fit plus the accepted log-likelihood at each iteration."""
    w = np.asarray(ws, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if w.size < 2:
        raise DomainViolation(f"need at least 2 observations, got {w.size}")
    if y.size != w.size:
        raise LengthMismatch(f"ys has length {y.size}, expected {w.size}")
    if weights is None:
        kappa = np.ones_like(w)
    else:
        kappa = np.asarray(weights, dtype=np.float64)
        if kappa.size != w.size:
            raise LengthMismatch(f"weights has length {kappa.size}, expected {w.size}")
        if np.min(kappa) <= 0.0:
            raise DomainViolation("weights must be strictly positive")

    ybar = float(np.sum(kappa * y) / np.sum(kappa))
    if ybar <= 0.0 or ybar >= 1.0:
        clipped = min(max(ybar, PROB_CLIP), 1.0 - PROB_CLIP)
        fit = LogisticFit(
            intercept=math.log(clipped / (1.0 - clipped)),
            slope=0.0,
            converged=False,
            iterations=0,
        )
        return fit, []

    a, b = 0.0, 0.0
    ll = _weighted_loglik(a + b * w, y, kappa)
    path = [ll]
    converged = False
    iterations = 0
    for it in range(1, MAX_IRLS_ITERATIONS + 1):
        iterations = it
        z = a + b * w
        p = logistic(z)
        resid = kappa * (y - p)
        g0 = float(np.sum(resid))
        g1 = float(np.sum(resid * w))
        s = kappa * p * (1.0 - p)
        h00 = float(np.sum(s))
        h01 = float(np.sum(s * w))
        h11 = float(np.sum(s * w * w))
        det = h00 * h11 - h01 * h01
        if not math.isfinite(det) or det <= 0.0:
            break
        da = (h11 * g0 - h01 * g1) / det
        db = (h00 * g1 - h01 * g0) / det

        step = 1.0
        new_a, new_b, new_ll = a, b, ll
        while step >= 1e-10:
            cand_a = a + step * da
            cand_b = b + step * db
            cand_ll = _weighted_loglik(cand_a + cand_b * w, y, kappa)
            if cand_ll >= ll - _LL_TOL:
                new_a, new_b, new_ll = cand_a, cand_b, cand_ll
                break
            step *= 0.5
        change = max(abs(new_a - a), abs(new_b - b))
        a, b, ll = new_a, new_b, new_ll
        path.append(ll)
        if change < IRLS_COEF_TOL:
            converged = True
            break

    fit = LogisticFit(intercept=a, slope=b, converged=converged, iterations=iterations)
    return fit, path


def predict_logistic(fit: LogisticFit, w):
    """Fitted probabilities, clipped into [1e-6, 1 - 1e-6]."""
    p = logistic(fit.intercept + fit.slope * np.asarray(w, dtype=np.float64))
    out = np.clip(p, PROB_CLIP, 1.0 - PROB_CLIP)
    if np.ndim(out) == 0:
        return float(out)
    return out


def nearest_neighbor(query: float, candidates) -> int:
    """Index of the candidate closest to query; ties go to the smallest index."""
    arr = np.asarray(candidates, dtype=np.float64)
    if arr.size == 0:
        raise EmptyCandidates("no candidates to match against")
    return int(np.argmin(np.abs(arr - query)))


def cao_weights(pis):
    """Efficiency weights (1 - pi) / pi^2 for the treated-arm outcome fit.

    The control-arm mirror is obtained as ``cao_weights(1 - pi)``.
    """
    arr = np.asarray(pis, dtype=np.float64)
    if arr.size and (np.min(arr) <= 0.0 or np.max(arr) >= 1.0):
        bad = np.flatnonzero((arr <= 0.0) | (arr >= 1.0))[0]
        raise DomainViolation(f"propensity outside (0, 1): {arr[bad]}")
    out = (1.0 - arr) / (arr * arr)
    if out.ndim == 0:
        return float(out)
    return out
