import numpy as np
import pytest

from atebench.errors import DomainViolation, EmptyCandidates, LengthMismatch
from atebench.nuisance import (
    LogisticFit,
    _fit_logistic_with_path,
    cao_weights,
    fit_logistic,
    nearest_neighbor,
    predict_logistic,
)

from oracles import grid_logistic_mle, loglik_logistic


def test_symmetric_design_has_zero_mle():
    fit = fit_logistic([0, 0, 1, 1], [0, 1, 0, 1])
    assert fit.intercept == pytest.approx(0.0, abs=1e-12)
    assert fit.slope == pytest.approx(0.0, abs=1e-12)
    assert predict_logistic(fit, 0.3) == pytest.approx(0.5, abs=1e-12)
    assert fit.converged


def test_perfect_separation_caps_iterations():
    fit = fit_logistic([0.0, 1.0], [0, 1])
    assert not fit.converged
    assert fit.iterations == 100
    assert predict_logistic(fit, 0.0) <= 1e-3
    assert predict_logistic(fit, 1.0) >= 1.0 - 1e-3
    # Monotone-likelihood oracle: scaling the coefficients up keeps improving.
    lls = [
        loglik_logistic(t * fit.intercept, t * fit.slope, [0.0, 1.0], [0, 1])
        for t in (0.25, 0.5, 1.0)
    ]
    assert lls[0] < lls[1] < lls[2] <= 0.0


def test_mle_matches_grid_search_oracle():
    ws = [0, 0, 1, 1, 0.5, 0.5]
    ys = [0, 1, 1, 1, 1, 0]
    fit = fit_logistic(ws, ys)
    a, b = grid_logistic_mle(ws, ys, staged=True)
    assert fit.intercept == pytest.approx(a, abs=2e-3)
    assert fit.slope == pytest.approx(b, abs=2e-3)
    assert fit.converged


def test_weighted_mle_matches_grid_search_oracle():
    ws = [0.1, 0.3, 0.55, 0.8, 0.9, 0.2]
    ys = [0, 1, 1, 0, 1, 0]
    weights = [2.0, 1.0, 3.0, 1.5, 1.0, 2.5]
    fit = fit_logistic(ws, ys, weights)
    a, b = grid_logistic_mle(ws, ys, weights, staged=True)
    assert fit.intercept == pytest.approx(a, abs=2e-3)
    assert fit.slope == pytest.approx(b, abs=2e-3)


def test_constant_weights_match_unweighted():
    rng = np.random.default_rng(4)
    ws = rng.random(40)
    ys = (rng.random(40) < 0.4).astype(int)
    base = fit_logistic(ws, ys)
    scaled = fit_logistic(ws, ys, np.full(40, 3.7))
    assert scaled.intercept == pytest.approx(base.intercept, abs=1e-7)
    assert scaled.slope == pytest.approx(base.slope, abs=1e-7)


def test_all_identical_responses_return_constant_fit():
    fit = fit_logistic([0.2, 0.4, 0.9], [1, 1, 1])
    assert not fit.converged
    assert fit.slope == 0.0
    assert predict_logistic(fit, 0.5) == pytest.approx(1.0 - 1e-6, abs=1e-9)
    fit0 = fit_logistic([0.2, 0.4, 0.9], [0, 0, 0])
    assert predict_logistic(fit0, 0.5) == pytest.approx(1e-6, abs=1e-9)


def test_loglik_never_decreases_across_iterations():
    rng = np.random.default_rng(8)
    for _ in range(100):
        m = int(rng.integers(5, 60))
        ws = rng.random(m)
        ys = (rng.random(m) < 0.3 + 0.4 * ws).astype(int)
        weights = rng.random(m) + 0.1 if rng.random() < 0.5 else None
        _, path = _fit_logistic_with_path(ws, ys, weights)
        if len(path) > 1:
            assert np.all(np.diff(path) >= -1e-12)


def test_predict_examples():
    assert predict_logistic(LogisticFit(0.0, 0.0, True, 1), 0.77) == 0.5
    assert predict_logistic(LogisticFit(0.1, 0.5, True, 5), 1.0) == pytest.approx(
        0.6456563062257954, abs=1e-9
    )
    assert predict_logistic(LogisticFit(40.0, 0.0, True, 1), 0.3) == 1.0 - 1e-6


def test_fit_input_contracts():
    with pytest.raises(DomainViolation):
        fit_logistic([0.5], [1])
    with pytest.raises(LengthMismatch):
        fit_logistic([0.1, 0.2], [1])
    with pytest.raises(LengthMismatch):
        fit_logistic([0.1, 0.2], [1, 0], [1.0])
    with pytest.raises(DomainViolation):
        fit_logistic([0.1, 0.2], [1, 0], [1.0, 0.0])


def test_nearest_neighbor_examples():
    assert nearest_neighbor(0.5, [0.1, 0.5, 0.9]) == 1
    assert nearest_neighbor(0.3, [0.2, 0.4]) == 0
    assert nearest_neighbor(0.31, [0.2, 0.4]) == 1
    with pytest.raises(EmptyCandidates):
        nearest_neighbor(0.5, [])


def test_nearest_neighbor_exact_ties_take_smallest_index():
    assert nearest_neighbor(0.7, [0.9, 0.5, 0.9, 0.5]) == 0
    assert nearest_neighbor(0.5, [0.9, 0.5, 0.5]) == 1


def test_cao_weights_values():
    assert cao_weights(0.5) == pytest.approx(2.0, abs=1e-15)
    assert cao_weights(0.1) == pytest.approx(90.0, abs=1e-12)
    assert cao_weights(1.0 - 1e-9) == pytest.approx(0.0, abs=1e-8)
    np.testing.assert_allclose(
        cao_weights(np.array([0.5, 0.1])), [2.0, 90.0], atol=1e-12
    )


def test_cao_weights_domain():
    with pytest.raises(DomainViolation):
        cao_weights(0.0)
    with pytest.raises(DomainViolation):
        cao_weights(np.array([0.5, 1.0]))
