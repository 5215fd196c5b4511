"""Bagged CART regression forest on a single covariate.

Trees are grown on bootstrap resamples with the classic least-squares split
criterion: candidate splits are midpoints between distinct consecutive sorted
covariate values, and the split minimizing the summed weighted within-child
squared error wins (first candidate on ties). Growth stops at min_node_size,
max_depth, or zero-variance nodes. With one covariate there is no feature
subsampling; all tree randomness comes from the bootstrap.

The grower is numba-compiled: the Monte Carlo benchmark fits tens of
thousands of forests, so the node loop cannot live in Python. Trees are
stored as flat node arrays (threshold NaN marks a leaf), which keeps fits
picklable for worker processes.

fit_forest canonicalizes its input by sorting rows lexicographically by
(w, y, weight) before drawing bootstrap indices, so predictions depend only
on the training multiset and the seed, not on row order. fit_forest_oob
instead keeps the caller's row order (sorting by w alone, stably) and reports
per-tree bag membership, so out-of-bag predictions provably never saw the
unit's own response.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainViolation, LengthMismatch

_SSE_EPS = 1e-12


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    min_node_size: int = 5
    bootstrap: bool = True
    max_depth: int = 30

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise DomainViolation(f"n_trees must be >= 1, got {self.n_trees}")
        if self.min_node_size < 1:
            raise DomainViolation(
                f"min_node_size must be >= 1, got {self.min_node_size}"
            )
        if self.max_depth < 0:
            raise DomainViolation(f"max_depth must be >= 0, got {self.max_depth}")


@njit(cache=True)
def _grow_trees(bw, by, bk, min_node_size, max_depth, thresholds, lefts, rights, values, n_nodes):
    # bw/by/bk: (T, m) bootstrap samples, each row ascending in w.
    n_trees, m = bw.shape
    max_nodes = thresholds.shape[1]
    stack_node = np.empty(max_nodes, np.int64)
    stack_lo = np.empty(max_nodes, np.int64)
    stack_hi = np.empty(max_nodes, np.int64)
    stack_depth = np.empty(max_nodes, np.int64)
    for t in range(n_trees):
        next_node = 1
        stack_node[0] = 0
        stack_lo[0] = 0
        stack_hi[0] = m
        stack_depth[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            node = stack_node[sp]
            lo = stack_lo[sp]
            hi = stack_hi[sp]
            depth = stack_depth[sp]
            size = hi - lo

            ksum = 0.0
            kysum = 0.0
            ky2sum = 0.0
            for i in range(lo, hi):
                k = bk[t, i]
                ky = k * by[t, i]
                ksum += k
                kysum += ky
                ky2sum += ky * by[t, i]
            mean = kysum / ksum
            node_sse = ky2sum - kysum * kysum / ksum

            best_pos = -1
            if (
                size > min_node_size
                and depth < max_depth
                and node_sse > _SSE_EPS
                and bw[t, hi - 1] > bw[t, lo]
            ):
                best_sse = np.inf
                lk = 0.0
                lky = 0.0
                lky2 = 0.0
                for i in range(lo, hi - 1):
                    k = bk[t, i]
                    ky = k * by[t, i]
                    lk += k
                    lky += ky
                    lky2 += ky * by[t, i]
                    if bw[t, i + 1] > bw[t, i]:
                        rk = ksum - lk
                        rky = kysum - lky
                        rky2 = ky2sum - lky2
                        cand = (lky2 - lky * lky / lk) + (rky2 - rky * rky / rk)
                        if cand < best_sse:
                            best_sse = cand
                            best_pos = i

            if best_pos < 0:
                thresholds[t, node] = np.nan
                lefts[t, node] = -1
                rights[t, node] = -1
                values[t, node] = mean
            else:
                lid = next_node
                rid = next_node + 1
                next_node += 2
                thresholds[t, node] = 0.5 * (bw[t, best_pos] + bw[t, best_pos + 1])
                lefts[t, node] = lid
                rights[t, node] = rid
                values[t, node] = mean
                stack_node[sp] = lid
                stack_lo[sp] = lo
                stack_hi[sp] = best_pos + 1
                stack_depth[sp] = depth + 1
                sp += 1
                stack_node[sp] = rid
                stack_lo[sp] = best_pos + 1
                stack_hi[sp] = hi
                stack_depth[sp] = depth + 1
                sp += 1
        n_nodes[t] = next_node


@njit(cache=True)
def _tree_values(thresholds, lefts, rights, values, w, out):
    n_trees = thresholds.shape[0]
    npts = w.size
    for t in range(n_trees):
        for i in range(npts):
            node = 0
            while lefts[t, node] >= 0:
                if w[i] <= thresholds[t, node]:
                    node = lefts[t, node]
                else:
                    node = rights[t, node]
            out[t, i] = values[t, node]


@dataclass(frozen=True, eq=False)
class ForestFit:
    """Fitted forest as flat per-tree node arrays (threshold NaN = leaf)."""

    params: ForestParams
    clip_unit: bool
    thresholds: np.ndarray
    lefts: np.ndarray
    rights: np.ndarray
    values: np.ndarray
    n_nodes: np.ndarray

    def per_tree_values(self, w) -> np.ndarray:
        """Raw prediction of every tree at every point, shape (n_trees, npts)."""
        pts = np.ascontiguousarray(np.atleast_1d(np.asarray(w, dtype=np.float64)))
        out = np.empty((self.thresholds.shape[0], pts.size), dtype=np.float64)
        _tree_values(self.thresholds, self.lefts, self.rights, self.values, pts, out)
        return out

    def predict(self, w):
        out = self.per_tree_values(w).mean(axis=0)
        if self.clip_unit:
            out = np.clip(out, 0.0, 1.0)
        if np.ndim(w) == 0:
            return float(out[0])
        return out


def predict_forest(fit: ForestFit, w):
    """Average of per-tree leaf means; clipped to [0, 1] for probability fits."""
    return fit.predict(w)


def _prepare(ws, ys, weights):
    w = np.asarray(ws, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if w.size < 1:
        raise DomainViolation("need at least 1 observation")
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
    return w, y, kappa


def _grow(w, y, kappa, params, boot) -> ForestFit:
    m = w.size
    bw = np.ascontiguousarray(w[boot])
    by = np.ascontiguousarray(y[boot])
    bk = np.ascontiguousarray(kappa[boot])
    max_nodes = 2 * m + 1
    n_trees = boot.shape[0]
    thresholds = np.empty((n_trees, max_nodes), dtype=np.float64)
    lefts = np.empty((n_trees, max_nodes), dtype=np.int32)
    rights = np.empty((n_trees, max_nodes), dtype=np.int32)
    values = np.empty((n_trees, max_nodes), dtype=np.float64)
    n_nodes = np.empty(n_trees, dtype=np.int32)
    _grow_trees(
        bw, by, bk, params.min_node_size, params.max_depth,
        thresholds, lefts, rights, values, n_nodes,
    )
    return ForestFit(
        params=params,
        clip_unit=False,
        thresholds=thresholds,
        lefts=lefts,
        rights=rights,
        values=values,
        n_nodes=n_nodes,
    )


def _bootstrap_positions(params: ForestParams, m: int, rng) -> np.ndarray:
    if params.bootstrap:
        boot = rng.integers(0, m, size=(params.n_trees, m), dtype=np.int64)
        boot.sort(axis=1)
    else:
        boot = np.tile(np.arange(m, dtype=np.int64), (params.n_trees, 1))
    return boot


def fit_forest(
    ws,
    ys,
    weights=None,
    params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
    clip_unit: bool = False,
) -> ForestFit:
    """Grow a bagged regression forest; deterministic given the generator state."""
    if params is None:
        params = ForestParams()
    if rng is None:
        rng = np.random.default_rng(0)
    w, y, kappa = _prepare(ws, ys, weights)
    # Canonical row order: the result must not depend on how rows were listed.
    order = np.lexsort((kappa, y, w))
    boot = _bootstrap_positions(params, w.size, rng)
    fit = _grow(w[order], y[order], kappa[order], params, boot)
    if clip_unit:
        fit = ForestFit(
            params=fit.params, clip_unit=True, thresholds=fit.thresholds,
            lefts=fit.lefts, rights=fit.rights, values=fit.values, n_nodes=fit.n_nodes,
        )
    return fit


def fit_forest_oob(
    ws,
    ys,
    weights=None,
    params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
    clip_unit: bool = False,
) -> tuple[ForestFit, np.ndarray]:
    """Fit a forest and report bag membership per (tree, training row).

    Rows are sorted stably by w alone, so the mapping from training rows to
    bag membership never depends on the responses: perturbing y_i cannot
    change which trees exclude unit i.
    """
    if params is None:
        params = ForestParams()
    if rng is None:
        rng = np.random.default_rng(0)
    w, y, kappa = _prepare(ws, ys, weights)
    m = w.size
    order = np.argsort(w, kind="stable")
    boot = _bootstrap_positions(params, m, rng)
    fit = _grow(w[order], y[order], kappa[order], params, boot)
    if clip_unit:
        fit = ForestFit(
            params=fit.params, clip_unit=True, thresholds=fit.thresholds,
            lefts=fit.lefts, rights=fit.rights, values=fit.values, n_nodes=fit.n_nodes,
        )
    inbag_sorted = np.zeros((params.n_trees, m), dtype=bool)
    rows = np.repeat(np.arange(params.n_trees), m)
    inbag_sorted[rows, boot.ravel()] = True
    pos_of_original = np.empty(m, dtype=np.int64)
    pos_of_original[order] = np.arange(m)
    inbag = inbag_sorted[:, pos_of_original]
    return fit, inbag


def oob_predictions(fit: ForestFit, inbag: np.ndarray, w_train) -> tuple[np.ndarray, np.ndarray]:
    """Per-row prediction averaged over trees whose bootstrap excluded the row.

    Returns (values, has_oob); rows in every bag get has_oob False and a
    value of 0, and the caller chooses the fallback.
    """
    per_tree = fit.per_tree_values(w_train)
    oob = ~inbag
    counts = oob.sum(axis=0)
    sums = (per_tree * oob).sum(axis=0)
    vals = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    if fit.clip_unit:
        vals = np.clip(vals, 0.0, 1.0)
    return vals, counts > 0
