"""Independent reference implementations used as test oracles.

Everything here deliberately avoids the code paths it checks: grid search
instead of IRLS, recursive descent instead of the vectorized tree walk,
explicit loops instead of vectorized estimators.
"""

import math

import numpy as np


def loglik_logistic(a, b, ws, ys, weights=None):
    w = np.asarray(ws, dtype=float)
    y = np.asarray(ys, dtype=float)
    k = np.ones_like(w) if weights is None else np.asarray(weights, dtype=float)
    z = a + b * w
    return float(np.sum(k * (y * z - np.logaddexp(0.0, z))))


def grid_logistic_mle(ws, ys, weights=None, bound=5.0, step=1e-3, staged=False):
    """Maximize the Bernoulli log-likelihood over an (intercept, slope) grid.

    With staged=True a coarse scan locates the optimum and a fine grid at
    ``step`` refines around it (same optimum for the concave likelihood,
    far cheaper); otherwise the full grid at ``step`` is scanned.
    """
    w = np.asarray(ws, dtype=float)
    y = np.asarray(ys, dtype=float)
    k = np.ones_like(w) if weights is None else np.asarray(weights, dtype=float)
    uw, inv = np.unique(w, return_inverse=True)
    ksum = np.zeros_like(uw)
    kysum = np.zeros_like(uw)
    np.add.at(ksum, inv, k)
    np.add.at(kysum, inv, k * y)

    def scan(a_grid, b_grid):
        best = (-np.inf, 0.0, 0.0)
        for a in a_grid:
            z = a + np.outer(b_grid, uw)
            tot = (kysum * z - ksum * np.logaddexp(0.0, z)).sum(axis=1)
            j = int(np.argmax(tot))
            if tot[j] > best[0]:
                best = (float(tot[j]), float(a), float(b_grid[j]))
        return best

    if staged:
        coarse = np.arange(-bound, bound + 0.01, 0.02)
        _, a0, b0 = scan(coarse, coarse)
        window = 0.05
        fine_a = np.arange(max(-bound, a0 - window), min(bound, a0 + window) + step / 2, step)
        fine_b = np.arange(max(-bound, b0 - window), min(bound, b0 + window) + step / 2, step)
        _, a, b = scan(fine_a, fine_b)
        return a, b
    grid = np.arange(-bound, bound + step / 2, step)
    _, a, b = scan(grid, grid)
    return a, b


def acklam_norm_ppf(p):
    """Acklam's rational approximation to the standard normal quantile."""
    a = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
    b = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
    c = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
    d = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
         3.754408661907416e+00)
    plow, phigh = 0.02425, 1 - 0.02425
    if p < plow:
        q = math.sqrt(-2 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1)
    if p > phigh:
        q = math.sqrt(-2 * math.log(1 - p))
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / \
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1)
    q = p - 0.5
    r = q * q
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q / \
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1)


def tree_predict_recursive(fit, tree: int, w: float) -> float:
    """Walk one stored tree by plain recursion."""

    def descend(node: int) -> float:
        if fit.lefts[tree, node] < 0:
            return float(fit.values[tree, node])
        if w <= fit.thresholds[tree, node]:
            return descend(int(fit.lefts[tree, node]))
        return descend(int(fit.rights[tree, node]))

    return descend(0)


def forest_predict_recursive(fit, w: float) -> float:
    vals = [tree_predict_recursive(fit, t, w) for t in range(fit.thresholds.shape[0])]
    out = sum(vals) / len(vals)
    if fit.clip_unit:
        out = min(max(out, 0.0), 1.0)
    return out


def ht_by_loops(sample):
    """HT arm means computed with explicit per-unit loops."""
    n = sample.n
    mu1 = 0.0
    mu0 = 0.0
    for i in range(n):
        mu1 += sample.y[i] * sample.x[i] / sample.pi[i]
        mu0 += sample.y[i] * (1 - sample.x[i]) / (1.0 - sample.pi[i])
    return mu1 / n, mu0 / n


def adjusted_mu1_three_terms(sample, g_values):
    """Term-by-term evaluation of the three-part decomposition."""
    n = sample.n
    term_ht = 0.0
    term_gx = 0.0
    term_g = 0.0
    for i in range(n):
        term_ht += sample.y[i] * sample.x[i] / sample.pi[i]
        term_gx += g_values[i] * sample.x[i] / sample.pi[i]
        term_g += g_values[i]
    return term_ht / n - term_gx / n + term_g / n


def matching_by_loops(sample, feature):
    """Explicit-loop 1-NN matching with replacement, smallest index on ties."""
    n = sample.n
    treated = [i for i in range(n) if sample.x[i] == 1]
    control = [i for i in range(n) if sample.x[i] == 0]

    def nearest(i, pool):
        best = pool[0]
        best_d = abs(feature[i] - feature[pool[0]])
        for j in pool[1:]:
            d = abs(feature[i] - feature[j])
            if d < best_d:
                best, best_d = j, d
        return best

    diffs = []
    for i in range(n):
        if sample.x[i] == 1:
            y1 = sample.y[i]
            y0 = sample.y[nearest(i, control)]
        else:
            y0 = sample.y[i]
            y1 = sample.y[nearest(i, treated)]
        diffs.append(y1 - y0)
    return float(np.mean(diffs))
