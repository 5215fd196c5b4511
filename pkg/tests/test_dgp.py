import math

import numpy as np
import pytest
from scipy import integrate

from atebench.dgp import (
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
from atebench.errors import DomainViolation

ALL_SPECS = [DgpSpec.experiment(k) for k in (1, 2, 3)]


def test_logistic_values():
    assert logistic(0.0) == 0.5
    assert logistic(0.1) == pytest.approx(0.52497918747894, abs=1e-10)
    assert logistic(0.6) == pytest.approx(0.6456563062257954, abs=1e-10)


def test_logistic_stable_for_large_arguments():
    assert logistic(700.0) == pytest.approx(1.0)
    assert logistic(-700.0) == pytest.approx(0.0, abs=1e-300)
    assert logistic(-700.0) > 0.0 or logistic(-700.0) == 0.0
    arr = logistic(np.array([-1000.0, 0.0, 1000.0]))
    assert np.all(np.isfinite(arr))


def test_experiment1_prob_endpoints():
    assert experiment1_prob(0.0) == pytest.approx(logistic(0.1), abs=1e-15)
    assert experiment1_prob(1.0) == pytest.approx(logistic(0.6), abs=1e-15)
    assert experiment1_prob(0.0) < experiment1_prob(0.5) < experiment1_prob(1.0)


def test_experiment2_prob_values():
    assert experiment2_prob(0.0) == pytest.approx(0.1, abs=1e-15)
    assert experiment2_prob(1.0) == pytest.approx(0.6300575680314233, abs=1e-10)


def test_experiment2_minimum_location():
    # Grid minimization oracle at step 1e-6.
    grid = np.linspace(0.0, 1.0, 1_000_001)
    vals = experiment2_prob(grid)
    i = int(np.argmin(vals))
    assert vals[i] == pytest.approx(0.0238833, abs=1e-5)
    assert grid[i] == pytest.approx(0.305244, abs=1e-4)


def test_experiment3_prob_bins():
    assert experiment3_prob(0.005, 1) == 0.9
    assert experiment3_prob(0.015, 1) == 0.1
    assert experiment3_prob(1.0, 1) == 0.1  # clamped into the last (even) bin


def test_experiment3_alternates_between_bins():
    n = 1
    bins = 100 * n
    centers = (np.arange(bins) + 0.5) / bins
    probs = experiment3_prob(centers, n)
    assert np.all(probs[:-1] != probs[1:])


def test_prob_domain_checks():
    with pytest.raises(DomainViolation):
        experiment1_prob(-0.01)
    with pytest.raises(DomainViolation):
        experiment2_prob(1.01)
    with pytest.raises(DomainViolation):
        experiment3_prob(np.array([0.5, 2.0]), 1)


def test_delta_of_values():
    assert delta_of(DgpSpec.experiment(3), 5) == 0.1
    assert delta_of(DgpSpec.experiment(1), 5) == pytest.approx(
        1.0 - logistic(0.6), abs=1e-12
    )
    grid = np.linspace(0.0, 1.0, 1_000_001)
    oracle = float(np.min(experiment2_prob(grid)))
    assert delta_of(DgpSpec.experiment(2), 5) == pytest.approx(oracle, abs=1e-5)


def test_positivity_over_grid():
    grid = np.linspace(0.0, 1.0, 10_001)
    for spec in ALL_SPECS:
        for n in (1, 7):
            p = np.asarray(spec.probability(grid, n))
            d = delta_of(spec, n)
            assert np.all(p >= d)
            assert np.all(p <= 1.0 - d + 1e-12)


def test_true_estimands_closed_forms():
    # Experiment 1 oracle: adaptive quadrature, independent of the log1p form.
    q1, _ = integrate.quad(lambda w: experiment1_prob(w), 0.0, 1.0, epsabs=1e-12)
    t1 = true_estimands(DgpSpec.experiment(1), 10)
    assert t1.mu1 == pytest.approx(q1, abs=1e-9)
    assert t1.mu1 == pytest.approx(0.5861825808246293, abs=1e-9)
    # Experiment 2 oracle: the closed form (0.2/15)(1 - cos 15) + 0.3.
    t2 = true_estimands(DgpSpec.experiment(2), 10)
    assert t2.mu1 == pytest.approx((0.2 / 15.0) * (1.0 - math.cos(15.0)) + 0.3, abs=1e-9)
    assert t2.mu1 == pytest.approx(0.3234625055047843, abs=1e-9)
    t3 = true_estimands(DgpSpec.experiment(3), 10)
    assert t3.mu1 == 0.5
    for t in (t1, t2, t3):
        assert t.ate == 0.0
        assert t.mu0 == t.mu1


def test_generate_sample_is_deterministic():
    spec = DgpSpec.experiment(2)
    s1, _ = generate_sample(spec, 200, np.random.default_rng(99))
    s2, _ = generate_sample(spec, 200, np.random.default_rng(99))
    assert np.array_equal(s1.w, s2.w)
    assert np.array_equal(s1.x, s2.x)
    assert np.array_equal(s1.y, s2.y)
    assert np.array_equal(s1.pi, s2.pi)


def test_generate_sample_consistency_and_sharp_null():
    spec = DgpSpec.experiment(3)
    sample, units = generate_sample(spec, 500, np.random.default_rng(3))
    y0, y1, x, y = units.y0, units.y1, units.x, units.y
    assert np.array_equal(y, y0 * (1 - x) + y1 * x)
    assert np.array_equal(y0, y1)
    assert len(units) == 500
    u = units[3]
    assert u.y == u.y0 == u.y1


def test_generate_sample_near_degenerate_custom():
    spec = DgpSpec.custom(lambda w: np.full_like(w, 1.0 - 1e-12), delta=1e-12)
    sample, units = generate_sample(spec, 200, np.random.default_rng(0))
    assert np.all(sample.x == 1)
    assert np.all(sample.y == 1)
    assert np.array_equal(units.y, units.y1)


def test_experiment1_large_sample_treated_share():
    spec = DgpSpec.experiment(1)
    sample, _ = generate_sample(spec, 1_000_000, np.random.default_rng(12))
    assert abs(float(np.mean(sample.x)) - 0.5861825808246293) < 0.003


def test_experiment3_large_sample_treated_share():
    spec = DgpSpec.experiment(3)
    sample, _ = generate_sample(spec, 1_000_000, np.random.default_rng(13))
    assert abs(float(np.mean(sample.x)) - 0.5) < 0.003


def test_unconfoundedness_within_probability_band():
    # Among units whose p sits in a narrow band, x and y are uncorrelated.
    spec = DgpSpec.experiment(2)
    sample, _ = generate_sample(spec, 1_000_000, np.random.default_rng(21))
    band = (sample.pi > 0.30) & (sample.pi < 0.32)
    m = int(np.sum(band))
    assert m > 10_000
    x = sample.x[band].astype(float)
    y = sample.y[band].astype(float)
    corr = float(np.corrcoef(x, y)[0, 1])
    assert abs(corr) < 6.0 / math.sqrt(m)


def test_custom_delta_derived_by_scan():
    spec = DgpSpec.custom(lambda w: 0.25 + 0.5 * w)
    assert delta_of(spec, 1) == pytest.approx(0.25, abs=1e-6)


def test_spec_kind_helpers():
    assert DgpSpec.experiment(3).n_dependent
    assert not DgpSpec.experiment(1).n_dependent
    assert DgpSpec.experiment(2).kind is DgpKind.EXPERIMENT2
    with pytest.raises(DomainViolation):
        DgpSpec.experiment(4)
    with pytest.raises(DomainViolation):
        generate_sample(DgpSpec.experiment(1), 0, np.random.default_rng(0))
