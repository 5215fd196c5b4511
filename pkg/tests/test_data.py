import dataclasses

import numpy as np
import pytest

from atebench.data import (
    Category,
    ConfidenceInterval,
    EstimateResult,
    Observation,
    Sample,
    TrueEstimands,
    validate_sample,
)
from atebench.dgp import DgpSpec, generate_sample
from atebench.errors import DomainViolation, LengthMismatch, PositivityViolation


def make_sample(**overrides):
    fields = dict(
        w=[0.1, 0.5, 0.9],
        x=[1, 0, 1],
        y=[1, 1, 0],
        delta=0.1,
        pi=[0.5, 0.5, 0.5],
    )
    fields.update(overrides)
    return Sample(**fields)


def test_valid_sample_passes():
    validate_sample(make_sample())


def test_positivity_violation_names_index():
    with pytest.raises(PositivityViolation, match="index 0"):
        validate_sample(make_sample(w=[0.1, 0.5], x=[1, 0], y=[1, 1], pi=[0.05, 0.5]))


def test_propensity_length_mismatch():
    with pytest.raises(LengthMismatch):
        validate_sample(make_sample(pi=[0.5, 0.5]))


def test_column_length_mismatch():
    with pytest.raises(LengthMismatch):
        validate_sample(make_sample(x=[1, 0]))


def test_covariate_domain():
    with pytest.raises(DomainViolation, match="index 1"):
        validate_sample(make_sample(w=[0.5, 1.2, 0.9]))


def test_binary_domains():
    with pytest.raises(DomainViolation):
        validate_sample(make_sample(x=[2, 0, 1]))
    with pytest.raises(DomainViolation):
        validate_sample(make_sample(y=[1, -1, 0]))


def test_empty_sample_rejected():
    with pytest.raises(DomainViolation):
        validate_sample(Sample(w=[], x=[], y=[], delta=0.1))


def test_delta_domain_checked_with_propensities():
    with pytest.raises(PositivityViolation):
        validate_sample(make_sample(delta=0.6, pi=[0.5, 0.5, 0.5]))
    with pytest.raises(PositivityViolation):
        validate_sample(make_sample(delta=0.0))


def test_boundary_propensity_accepted():
    # pi exactly at delta and 1 - delta must pass, including one-ulp rounding.
    delta = 1.0 - 0.6456563062257954
    validate_sample(
        make_sample(delta=delta, pi=[delta, 0.5, 1.0 - delta])
    )


def test_sample_is_frozen_and_copies_input():
    src = np.array([0.1, 0.5, 0.9])
    s = make_sample(w=src)
    src[0] = 0.7
    assert s.w[0] == 0.1
    with pytest.raises(ValueError):
        s.w[0] = 0.3
    with pytest.raises(dataclasses.FrozenInstanceError):
        s.delta = 0.2


def test_observations_round_trip():
    s = make_sample()
    obs = s.observations()
    assert obs[1] == Observation(w=0.5, x=0, y=1)
    back = Sample.from_observations(obs, delta=s.delta, true_propensity=s.pi)
    assert np.array_equal(back.w, s.w)
    assert np.array_equal(back.x, s.x)
    assert np.array_equal(back.y, s.y)


def test_ate_is_exact_difference():
    rng = np.random.default_rng(5)
    for _ in range(200):
        mu1, mu0 = rng.normal(size=2)
        res = EstimateResult(mu1_hat=mu1, mu0_hat=mu0, category=Category.NO_PROPENSITY)
        assert res.ate_hat == mu1 - mu0


def test_interval_need_not_contain_point_estimate():
    ci = ConfidenceInterval(lower=0.2, upper=0.4, alpha=0.05)
    res = EstimateResult(
        mu1_hat=1.0, mu0_hat=0.0, category=Category.TRUE_PROPENSITY, ci=ci
    )
    assert not ci.contains(res.ate_hat)


def test_interval_bounds_must_be_ordered():
    with pytest.raises(DomainViolation):
        ConfidenceInterval(lower=0.4, upper=0.2, alpha=0.05)


def test_true_estimands_sharp_null():
    t = TrueEstimands(mu1=0.42, mu0=0.42)
    assert t.ate == 0.0


def test_generated_samples_always_validate():
    rng = np.random.default_rng(11)
    for experiment in (1, 2, 3):
        spec = DgpSpec.experiment(experiment)
        for n in (1, 13, 500):
            sample, _ = generate_sample(spec, n, rng)
            validate_sample(sample)
