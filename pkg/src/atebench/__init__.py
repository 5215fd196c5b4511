"""ATE estimators with known propensity scores, plus a Monte Carlo benchmark.

The library side provides the data model, the three simulation
data-generating processes, native nuisance learners, eleven estimators of
the average treatment effect, and finite-sample/normal confidence intervals.
The CLI (``atebench simulate`` / ``atebench report``) runs replication grids
from a config file and renders RMSE charts.
"""

from .data import (
    Category,
    ConfidenceInterval,
    EstimateResult,
    Observation,
    Sample,
    TrueEstimands,
    validate_sample,
)
from .dgp import (
    DgpKind,
    DgpSpec,
    delta_of,
    experiment1_prob,
    experiment2_prob,
    experiment3_prob,
    generate_sample,
    logistic,
    true_estimands,
)
from .estimators import (
    CANONICAL_ORDER,
    REGISTRY,
    CrossFitPlan,
    FoldScheme,
    adjusted_ht_ate,
    adjusted_ht_mu0,
    adjusted_ht_mu1,
    aipw_ate,
    fit_arm_nuisance,
    full_sample,
    ht_ate,
    ht_mu0,
    ht_mu1,
    k_fold,
    leave_one_out,
    matching_ate,
    outcome_regression_ate,
    two_fold_halves,
)
from .forest import ForestFit, ForestParams, fit_forest, predict_forest
from .inference import (
    CiMethod,
    IntervalSpec,
    hoeffding_ci_ate,
    hoeffding_ci_mu1,
    hoeffding_halfwidth_ate,
    hoeffding_halfwidth_mu1,
    normal_ci_ate,
)
from .montecarlo import (
    EstimatorSetting,
    McCellReport,
    McConfig,
    ReplicationRow,
    aggregate,
    derive_seed,
    run_grid,
    run_replication,
)
from .nuisance import (
    LogisticFit,
    cao_weights,
    fit_logistic,
    nearest_neighbor,
    predict_logistic,
)

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_ORDER",
    "Category",
    "CiMethod",
    "ConfidenceInterval",
    "CrossFitPlan",
    "DgpKind",
    "DgpSpec",
    "EstimateResult",
    "EstimatorSetting",
    "FoldScheme",
    "ForestFit",
    "ForestParams",
    "IntervalSpec",
    "LogisticFit",
    "McCellReport",
    "McConfig",
    "Observation",
    "REGISTRY",
    "ReplicationRow",
    "Sample",
    "TrueEstimands",
    "adjusted_ht_ate",
    "adjusted_ht_mu0",
    "adjusted_ht_mu1",
    "aggregate",
    "aipw_ate",
    "cao_weights",
    "delta_of",
    "derive_seed",
    "experiment1_prob",
    "experiment2_prob",
    "experiment3_prob",
    "fit_arm_nuisance",
    "fit_forest",
    "fit_logistic",
    "full_sample",
    "generate_sample",
    "hoeffding_ci_ate",
    "hoeffding_ci_mu1",
    "hoeffding_halfwidth_ate",
    "hoeffding_halfwidth_mu1",
    "ht_ate",
    "ht_mu0",
    "ht_mu1",
    "k_fold",
    "leave_one_out",
    "logistic",
    "matching_ate",
    "nearest_neighbor",
    "normal_ci_ate",
    "outcome_regression_ate",
    "predict_forest",
    "predict_logistic",
    "run_grid",
    "run_replication",
    "true_estimands",
    "two_fold_halves",
    "validate_sample",
]
