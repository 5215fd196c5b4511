"""The eleven benchmark ATE estimators, organized by propensity usage.

True-propensity estimators: inverse-probability weighting (`ht`), its
regression-adjusted variants with cross-fit, leave-one-out and full-sample
nuisance fitting (`adj_ht_*`), and propensity-distance matching (`ps_match`).
Estimated-propensity estimators: doubly-robust estimation with logistic or
forest nuisances, optionally cross-fit over three folds (`dr_*`).
Propensity-free estimators: covariate matching (`nn_match`) and outcome
regression with logistic or forest responses (`logistic_plugin`,
`forest_tlearner`).

The adjusted estimators evaluate the three-term mean
``n^-1 sum[(y - g) x / pi + g]`` where each unit's g was fit without that
unit, so the augmentation is independent of the unit's own outcome and the
estimate stays finite-sample unbiased no matter how poor g is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .data import Category, EstimateResult, Sample
from .errors import (
    DomainViolation,
    EmptyArm,
    FoldMismatch,
    MissingPropensity,
)
from .forest import ForestParams, fit_forest, fit_forest_oob, oob_predictions
from .nuisance import PROB_CLIP, cao_weights, fit_logistic, predict_logistic

AIPW_CLIP = (0.01, 0.99)


class FoldScheme(Enum):
    TWO_FOLD_HALVES = "two_fold_halves"
    K_FOLD = "k_fold"
    LEAVE_ONE_OUT = "leave_one_out"
    FULL_SAMPLE = "full_sample"


@dataclass(frozen=True, eq=False)
class CrossFitPlan:
    """Fold assignment per unit; the model used for a unit is fit off its fold.

    Folds are contiguous blocks in the units' given order, relying on i.i.d.
    sampling for exchangeability; no internal shuffling.
    """

    scheme: FoldScheme
    n: int
    folds: np.ndarray
    k: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossFitPlan):
            return NotImplemented
        return (
            self.scheme is other.scheme
            and self.n == other.n
            and self.k == other.k
            and np.array_equal(self.folds, other.folds)
        )


def two_fold_halves(n: int) -> CrossFitPlan:
    """First ceil(n/2) units in fold 0, the rest in fold 1."""
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    half = math.ceil(n / 2)
    folds = np.zeros(n, dtype=np.int64)
    folds[half:] = 1
    return CrossFitPlan(scheme=FoldScheme.TWO_FOLD_HALVES, n=n, folds=folds, k=2)


def k_fold(n: int, k: int) -> CrossFitPlan:
    """Contiguous folds whose sizes differ by at most one."""
    if n < 1 or k < 1 or k > n:
        raise DomainViolation(f"need 1 <= k <= n, got k={k}, n={n}")
    folds = np.empty(n, dtype=np.int64)
    start = 0
    base, extra = divmod(n, k)
    for f in range(k):
        size = base + (1 if f < extra else 0)
        folds[start : start + size] = f
        start += size
    return CrossFitPlan(scheme=FoldScheme.K_FOLD, n=n, folds=folds, k=k)


def leave_one_out(n: int) -> CrossFitPlan:
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    return CrossFitPlan(
        scheme=FoldScheme.LEAVE_ONE_OUT, n=n, folds=np.arange(n, dtype=np.int64), k=n
    )


def full_sample(n: int) -> CrossFitPlan:
    if n < 1:
        raise DomainViolation(f"n must be >= 1, got {n}")
    return CrossFitPlan(
        scheme=FoldScheme.FULL_SAMPLE, n=n, folds=np.zeros(n, dtype=np.int64), k=1
    )


# ---------------------------------------------------------------------------
# Inverse-probability weighting with the true score


def ht_mu1(sample: Sample) -> float:
    """n^-1 sum y x / pi."""
    if sample.pi is None:
        raise MissingPropensity("estimator requires true propensity scores")
    return float(np.mean((sample.y * sample.x) / sample.pi))


def ht_mu0(sample: Sample) -> float:
    """n^-1 sum y (1 - x) / (1 - pi)."""
    if sample.pi is None:
        raise MissingPropensity("estimator requires true propensity scores")
    return float(np.mean((sample.y * (1 - sample.x)) / (1.0 - sample.pi)))


def ht_ate(sample: Sample) -> EstimateResult:
    """Inverse-probability weighted estimate of both arm means."""
    return EstimateResult(
        mu1_hat=ht_mu1(sample),
        mu0_hat=ht_mu0(sample),
        category=Category.TRUE_PROPENSITY,
    )


# ---------------------------------------------------------------------------
# Regression-adjusted weighting


@dataclass(frozen=True, eq=False)
class NuisancePredictions:
    """Per-unit out-of-fold predictions of one arm's outcome regression."""

    plan: CrossFitPlan
    arm: int
    values: np.ndarray
    flags: tuple[str, ...] = ()


def _constant_predictor(value: float) -> Callable:
    return lambda wq: np.full(np.size(wq), value, dtype=np.float64)


def _fit_predictor(
    family: str,
    w_train: np.ndarray,
    y_train: np.ndarray,
    weights,
    forest_params: ForestParams,
    rng: np.random.Generator,
    flags: list,
    label: str,
) -> Callable:
    """Fit one outcome model and return a vectorized predictor.

    Degenerate training sets fall back to constants: predictions must exist
    for every unit, and any constant built from the training set alone keeps
    the cross-fitting independence intact.
    """
    if w_train.size == 0:
        flags.append(f"{label}:empty_train")
        return _constant_predictor(0.5)
    if family == "logistic":
        if w_train.size < 2:
            c = float(np.average(y_train, weights=weights))
            flags.append(f"{label}:tiny_train")
            return _constant_predictor(min(max(c, PROB_CLIP), 1.0 - PROB_CLIP))
        fit = fit_logistic(w_train, y_train, weights)
        if not fit.converged:
            flags.append(f"{label}:logistic_nonconverged")
        return lambda wq: np.atleast_1d(predict_logistic(fit, wq))
    if family == "forest":
        fit = fit_forest(
            w_train, y_train, weights, params=forest_params, rng=rng, clip_unit=True
        )
        return lambda wq: np.atleast_1d(fit.predict(wq))
    raise DomainViolation(f"unknown model family: {family!r}")


def _arm_weights(sample: Sample, arm: int, cao_weighted: bool):
    if not cao_weighted:
        return None
    if sample.pi is None:
        raise MissingPropensity("efficiency weights require true propensity scores")
    return cao_weights(sample.pi if arm == 1 else 1.0 - sample.pi)


def fit_arm_nuisance(
    sample: Sample,
    plan: CrossFitPlan,
    arm: int,
    family: str = "forest",
    *,
    cao_weighted: bool = False,
    forest_params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
) -> NuisancePredictions:
    """Out-of-fold outcome-regression predictions g_i for one arm.

    Arm 1 models are fit on treated units of the training folds, arm 0 on
    control units. With ``cao_weighted`` the fit minimizes weighted squared
    error with weights (1 - pi) / pi^2 (arm 1) or its mirror pi / (1 - pi)^2
    (arm 0).
    """
    if arm not in (0, 1):
        raise DomainViolation(f"arm must be 0 or 1, got {arm}")
    if plan.n != sample.n:
        raise FoldMismatch(f"plan built for n={plan.n}, sample has n={sample.n}")
    if forest_params is None:
        forest_params = ForestParams()
    if rng is None:
        rng = np.random.default_rng(0)

    mask = sample.x == arm
    full_weights = _arm_weights(sample, arm, cao_weighted)
    flags: list = []
    g = np.empty(sample.n, dtype=np.float64)
    label = f"g{arm}"

    def weights_at(idx):
        return None if full_weights is None else full_weights[idx]

    if plan.scheme is FoldScheme.FULL_SAMPLE:
        train = np.flatnonzero(mask)
        predict = _fit_predictor(
            family, sample.w[train], sample.y[train].astype(np.float64),
            weights_at(train), forest_params, rng, flags, label,
        )
        g[:] = predict(sample.w)
    elif plan.scheme in (FoldScheme.TWO_FOLD_HALVES, FoldScheme.K_FOLD):
        for fold in range(plan.k):
            infold = plan.folds == fold
            train = np.flatnonzero(~infold & mask)
            predict = _fit_predictor(
                family, sample.w[train], sample.y[train].astype(np.float64),
                weights_at(train), forest_params, rng, flags, f"{label}f{fold}",
            )
            g[infold] = predict(sample.w[infold])
    elif plan.scheme is FoldScheme.LEAVE_ONE_OUT:
        if family == "forest":
            g[:] = _loo_forest(
                sample, mask, full_weights, forest_params, rng, flags, label
            )
        else:
            g[:] = _loo_logistic(sample, mask, full_weights, flags, label)
    else:  # pragma: no cover - exhaustive over FoldScheme
        raise DomainViolation(f"unsupported scheme {plan.scheme}")

    return NuisancePredictions(plan=plan, arm=arm, values=g, flags=tuple(flags))


def _loo_forest(sample, mask, full_weights, forest_params, rng, flags, label):
    """Leave-one-out forest predictions via out-of-bag trees.

    A tree only sees its bootstrap rows, so for a training unit the average
    over trees whose bag excluded it is a prediction that never saw the
    unit's own response; non-training units can use the whole forest.
    """
    train = np.flatnonzero(mask)
    g = np.empty(sample.n, dtype=np.float64)
    if train.size == 0:
        flags.append(f"{label}:empty_train")
        g[:] = 0.5
        return g
    w_t = sample.w[train]
    y_t = sample.y[train].astype(np.float64)
    k_t = None if full_weights is None else full_weights[train]
    fit, inbag = fit_forest_oob(
        w_t, y_t, k_t, params=forest_params, rng=rng, clip_unit=True
    )
    g[:] = np.atleast_1d(fit.predict(sample.w))
    oob_vals, has_oob = oob_predictions(fit, inbag, w_t)
    if not np.all(has_oob):
        flags.append(f"{label}:no_oob_trees")
        kk = np.ones_like(y_t) if k_t is None else k_t
        tot_ky = float(np.sum(kk * y_t))
        tot_k = float(np.sum(kk))
        for j in np.flatnonzero(~has_oob):
            denom = tot_k - kk[j]
            oob_vals[j] = 0.5 if denom <= 0.0 else (tot_ky - kk[j] * y_t[j]) / denom
    g[train] = oob_vals
    return g


def _loo_logistic(sample, mask, full_weights, flags, label):
    train = np.flatnonzero(mask)
    g = np.empty(sample.n, dtype=np.float64)
    others_flags: list = []
    predict_all = _fit_predictor(
        "logistic", sample.w[train], sample.y[train].astype(np.float64),
        None if full_weights is None else full_weights[train],
        ForestParams(), np.random.default_rng(0), others_flags, label,
    )
    g[:] = predict_all(sample.w)
    for j in range(train.size):
        keep = np.delete(train, j)
        sub_flags: list = []
        predict = _fit_predictor(
            "logistic", sample.w[keep], sample.y[keep].astype(np.float64),
            None if full_weights is None else full_weights[keep],
            ForestParams(), np.random.default_rng(0), sub_flags, f"{label}loo",
        )
        g[train[j]] = predict(sample.w[train[j]])[0]
    flags.extend(others_flags)
    return g


def _check_nuisance(sample: Sample, g: NuisancePredictions, plan: CrossFitPlan, arm: int):
    if sample.pi is None:
        raise MissingPropensity("estimator requires true propensity scores")
    if g.plan != plan:
        raise FoldMismatch("nuisance predictions were fit under a different plan")
    if g.arm != arm:
        raise FoldMismatch(f"nuisance predictions target arm {g.arm}, expected {arm}")
    if g.values.size != sample.n:
        raise FoldMismatch(
            f"nuisance predictions cover {g.values.size} units, expected {sample.n}"
        )


def adjusted_ht_mu1(sample: Sample, g: NuisancePredictions, plan: CrossFitPlan) -> float:
    """n^-1 sum[(y - g) x / pi + g] with out-of-fold g."""
    _check_nuisance(sample, g, plan, arm=1)
    return float(
        np.mean((sample.y - g.values) * sample.x / sample.pi + g.values)
    )


def adjusted_ht_mu0(sample: Sample, g: NuisancePredictions, plan: CrossFitPlan) -> float:
    """Mirror of the arm-1 form: x -> 1 - x, pi -> 1 - pi."""
    _check_nuisance(sample, g, plan, arm=0)
    return float(
        np.mean((sample.y - g.values) * (1 - sample.x) / (1.0 - sample.pi) + g.values)
    )


def adjusted_ht_ate(
    sample: Sample,
    family: str = "forest",
    plan: CrossFitPlan | None = None,
    *,
    cao_weighted: bool = False,
    forest_params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
) -> EstimateResult:
    """Regression-adjusted weighting applied to both arms."""
    if sample.pi is None:
        raise MissingPropensity("estimator requires true propensity scores")
    if plan is None:
        plan = two_fold_halves(sample.n)
    if rng is None:
        rng = np.random.default_rng(0)
    g1 = fit_arm_nuisance(
        sample, plan, arm=1, family=family, cao_weighted=cao_weighted,
        forest_params=forest_params, rng=rng,
    )
    g0 = fit_arm_nuisance(
        sample, plan, arm=0, family=family, cao_weighted=cao_weighted,
        forest_params=forest_params, rng=rng,
    )
    return EstimateResult(
        mu1_hat=adjusted_ht_mu1(sample, g1, plan),
        mu0_hat=adjusted_ht_mu0(sample, g0, plan),
        category=Category.TRUE_PROPENSITY,
        flags=g1.flags + g0.flags,
    )


# ---------------------------------------------------------------------------
# Doubly-robust estimation with estimated nuisances


def aipw_from_nuisances(sample: Sample, pi_hat, m1, m0) -> tuple[float, float]:
    """Evaluate the augmented estimating equation for both arms.

    Returns (mu1_hat, mu0_hat); callers are responsible for clipping pi_hat.
    """
    x = sample.x
    y = sample.y
    mu1 = float(np.mean(x * (y - m1) / pi_hat + m1))
    mu0 = float(np.mean((1 - x) * (y - m0) / (1.0 - pi_hat) + m0))
    return mu1, mu0


def _fit_fold_nuisances(sample, train, outcome_family, ps_family, forest_params, rng, flags, tag):
    w_tr = sample.w[train]
    x_tr = sample.x[train]
    y_tr = sample.y[train].astype(np.float64)

    ps_predict = _fit_predictor(
        ps_family, w_tr, x_tr.astype(np.float64), None,
        forest_params, rng, flags, f"ps{tag}",
    )
    treated = train[x_tr == 1]
    control = train[x_tr == 0]
    if treated.size == 0 or control.size == 0:
        # Constant-probability fallback for the missing arm, flagged.
        c = float(np.mean(y_tr)) if y_tr.size else 0.5
        c = min(max(c, PROB_CLIP), 1.0 - PROB_CLIP)
        if treated.size == 0:
            flags.append(f"m1{tag}:empty_arm")
            m1_predict = _constant_predictor(c)
        else:
            m1_predict = _fit_predictor(
                outcome_family, sample.w[treated],
                sample.y[treated].astype(np.float64), None,
                forest_params, rng, flags, f"m1{tag}",
            )
        if control.size == 0:
            flags.append(f"m0{tag}:empty_arm")
            m0_predict = _constant_predictor(c)
        else:
            m0_predict = _fit_predictor(
                outcome_family, sample.w[control],
                sample.y[control].astype(np.float64), None,
                forest_params, rng, flags, f"m0{tag}",
            )
        return ps_predict, m1_predict, m0_predict
    m1_predict = _fit_predictor(
        outcome_family, sample.w[treated], sample.y[treated].astype(np.float64),
        None, forest_params, rng, flags, f"m1{tag}",
    )
    m0_predict = _fit_predictor(
        outcome_family, sample.w[control], sample.y[control].astype(np.float64),
        None, forest_params, rng, flags, f"m0{tag}",
    )
    return ps_predict, m1_predict, m0_predict


def aipw_ate(
    sample: Sample,
    outcome_family: str = "logistic",
    ps_family: str = "logistic",
    folds: int = 1,
    *,
    clip: tuple[float, float] = AIPW_CLIP,
    forest_params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
) -> EstimateResult:
    """Doubly-robust estimate with estimated propensity and outcome models.

    With ``folds=3`` the nuisances for each contiguous fold are fit on the
    other two folds; ``folds=1`` fits once on the full sample. Estimated
    propensities are clipped into ``clip`` to bound the weights.
    """
    if folds not in (1, 3):
        raise DomainViolation(f"folds must be 1 or 3, got {folds}")
    if forest_params is None:
        forest_params = ForestParams()
    if rng is None:
        rng = np.random.default_rng(0)

    n = sample.n
    flags: list = []
    pi_hat = np.empty(n, dtype=np.float64)
    m1 = np.empty(n, dtype=np.float64)
    m0 = np.empty(n, dtype=np.float64)

    if folds == 1:
        train = np.arange(n)
        ps_p, m1_p, m0_p = _fit_fold_nuisances(
            sample, train, outcome_family, ps_family, forest_params, rng, flags, ""
        )
        pi_hat[:] = ps_p(sample.w)
        m1[:] = m1_p(sample.w)
        m0[:] = m0_p(sample.w)
    else:
        plan = k_fold(n, folds)
        for fold in range(folds):
            infold = plan.folds == fold
            train = np.flatnonzero(~infold)
            ps_p, m1_p, m0_p = _fit_fold_nuisances(
                sample, train, outcome_family, ps_family, forest_params, rng,
                flags, f"f{fold}",
            )
            pi_hat[infold] = ps_p(sample.w[infold])
            m1[infold] = m1_p(sample.w[infold])
            m0[infold] = m0_p(sample.w[infold])

    pi_hat = np.clip(pi_hat, clip[0], clip[1])
    mu1, mu0 = aipw_from_nuisances(sample, pi_hat, m1, m0)
    return EstimateResult(
        mu1_hat=mu1,
        mu0_hat=mu0,
        category=Category.ESTIMATED_PROPENSITY,
        flags=tuple(flags),
    )


# ---------------------------------------------------------------------------
# Propensity-free estimators


def outcome_regression_ate(
    sample: Sample,
    family: str = "logistic",
    *,
    forest_params: ForestParams | None = None,
    rng: np.random.Generator | None = None,
) -> EstimateResult:
    """Plug-in estimate: separate arm models, averaged over all units."""
    if forest_params is None:
        forest_params = ForestParams()
    if rng is None:
        rng = np.random.default_rng(0)
    treated = np.flatnonzero(sample.x == 1)
    control = np.flatnonzero(sample.x == 0)
    if treated.size == 0 or control.size == 0:
        raise EmptyArm("outcome regression needs both treated and control units")
    flags: list = []
    m1_predict = _fit_predictor(
        family, sample.w[treated], sample.y[treated].astype(np.float64),
        None, forest_params, rng, flags, "m1",
    )
    m0_predict = _fit_predictor(
        family, sample.w[control], sample.y[control].astype(np.float64),
        None, forest_params, rng, flags, "m0",
    )
    return EstimateResult(
        mu1_hat=float(np.mean(m1_predict(sample.w))),
        mu0_hat=float(np.mean(m0_predict(sample.w))),
        category=Category.NO_PROPENSITY,
        flags=tuple(flags),
    )


def _nearest_indices(queries: np.ndarray, candidates: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Index of the closest candidate per query; ties to the smallest index."""
    out = np.empty(queries.size, dtype=np.int64)
    for start in range(0, queries.size, chunk):
        block = queries[start : start + chunk]
        dist = np.abs(block[:, None] - candidates[None, :])
        out[start : start + chunk] = np.argmin(dist, axis=1)
    return out


def matching_ate(sample: Sample, distance: str = "covariate") -> EstimateResult:
    """1-nearest-neighbor matching with replacement.

    Each unit's missing potential outcome is imputed from the nearest
    opposite-arm unit under the chosen distance (covariate w, or the true
    propensity score). Distance ties are broken by the smallest unit index.
    """
    if distance not in ("covariate", "true_propensity"):
        raise DomainViolation(f"unknown matching distance {distance!r}")
    if distance == "true_propensity":
        if sample.pi is None:
            raise MissingPropensity("propensity-distance matching needs true scores")
        feature = sample.pi
        category = Category.TRUE_PROPENSITY
    else:
        feature = sample.w
        category = Category.NO_PROPENSITY
    treated = np.flatnonzero(sample.x == 1)
    control = np.flatnonzero(sample.x == 0)
    if treated.size == 0 or control.size == 0:
        raise EmptyArm("matching needs both treated and control units")

    y1_hat = sample.y.astype(np.float64)
    y0_hat = sample.y.astype(np.float64)
    match_t = _nearest_indices(feature[control], feature[treated])
    y1_hat = y1_hat.copy()
    y1_hat[control] = sample.y[treated][match_t]
    match_c = _nearest_indices(feature[treated], feature[control])
    y0_hat = y0_hat.copy()
    y0_hat[treated] = sample.y[control][match_c]

    return EstimateResult(
        mu1_hat=float(np.mean(y1_hat)),
        mu0_hat=float(np.mean(y0_hat)),
        category=category,
    )


# ---------------------------------------------------------------------------
# Canonical roster


def _forest_params_from(opts: dict) -> ForestParams:
    return ForestParams(
        n_trees=int(opts.get("n_trees", 100)),
        min_node_size=int(opts.get("min_node_size", 5)),
        bootstrap=bool(opts.get("bootstrap", True)),
        max_depth=int(opts.get("max_depth", 30)),
    )


def _run_ht(sample, rng, opts):
    return ht_ate(sample)


def _plan_for(name: str, n: int) -> CrossFitPlan:
    if name == "crossfit":
        return two_fold_halves(n)
    if name == "loo":
        return leave_one_out(n)
    if name == "full":
        return full_sample(n)
    raise DomainViolation(f"unknown plan {name!r}")


def _make_adj_runner(plan_name: str):
    def run(sample, rng, opts):
        return adjusted_ht_ate(
            sample,
            family=opts.get("family", "forest"),
            plan=_plan_for(plan_name, sample.n),
            cao_weighted=bool(opts.get("cao_weighted", False)),
            forest_params=_forest_params_from(opts),
            rng=rng,
        )

    return run


def _make_aipw_runner(outcome_family: str, ps_family: str, folds: int):
    def run(sample, rng, opts):
        clip = (float(opts.get("clip_low", AIPW_CLIP[0])),
                float(opts.get("clip_high", AIPW_CLIP[1])))
        return aipw_ate(
            sample,
            outcome_family=opts.get("family", outcome_family),
            ps_family=opts.get("ps_family", ps_family),
            folds=int(opts.get("folds", folds)),
            clip=clip,
            forest_params=_forest_params_from(opts),
            rng=rng,
        )

    return run


def _run_ps_match(sample, rng, opts):
    return matching_ate(sample, distance="true_propensity")


def _run_nn_match(sample, rng, opts):
    return matching_ate(sample, distance="covariate")


def _run_logistic_plugin(sample, rng, opts):
    return outcome_regression_ate(sample, family="logistic")


def _run_forest_tlearner(sample, rng, opts):
    return outcome_regression_ate(
        sample, family="forest", forest_params=_forest_params_from(opts), rng=rng
    )


@dataclass(frozen=True)
class EstimatorDef:
    name: str
    category: Category
    run: Callable
    default_ci: str  # "hoeffding" | "normal" | "none"


REGISTRY: dict[str, EstimatorDef] = {
    d.name: d
    for d in (
        EstimatorDef("ht", Category.TRUE_PROPENSITY, _run_ht, "hoeffding"),
        EstimatorDef(
            "adj_ht_crossfit", Category.TRUE_PROPENSITY, _make_adj_runner("crossfit"), "normal"
        ),
        EstimatorDef(
            "adj_ht_loo", Category.TRUE_PROPENSITY, _make_adj_runner("loo"), "normal"
        ),
        EstimatorDef(
            "adj_ht_full", Category.TRUE_PROPENSITY, _make_adj_runner("full"), "normal"
        ),
        EstimatorDef("ps_match", Category.TRUE_PROPENSITY, _run_ps_match, "none"),
        EstimatorDef("nn_match", Category.NO_PROPENSITY, _run_nn_match, "none"),
        EstimatorDef(
            "logistic_plugin", Category.NO_PROPENSITY, _run_logistic_plugin, "none"
        ),
        EstimatorDef(
            "forest_tlearner", Category.NO_PROPENSITY, _run_forest_tlearner, "none"
        ),
        EstimatorDef(
            "dr_logistic", Category.ESTIMATED_PROPENSITY,
            _make_aipw_runner("logistic", "logistic", 1), "none",
        ),
        EstimatorDef(
            "dr_forest", Category.ESTIMATED_PROPENSITY,
            _make_aipw_runner("forest", "forest", 1), "none",
        ),
        EstimatorDef(
            "dr_forest_cf3", Category.ESTIMATED_PROPENSITY,
            _make_aipw_runner("forest", "forest", 3), "none",
        ),
    )
}

CANONICAL_ORDER: tuple[str, ...] = tuple(REGISTRY)
