import dataclasses

import numpy as np
import pytest

from impactgame.errors import InputError
from impactgame.scenario import (
    BeliefMatrices,
    FirmTypeSpec,
    Scenario,
    conditionals,
    validate,
)


def make_scenario(**overrides):
    base = dict(
        firm1_types=[FirmTypeSpec(1.0, 3.0), FirmTypeSpec(3.0, 5.0)],
        firm2_types=[FirmTypeSpec(2.0, 7.0), FirmTypeSpec(15.0, 5.0)],
        prior=[[0.40, 0.20], [0.15, 0.25]],
    )
    base.update(overrides)
    return Scenario(**base)


def test_firm_type_spec_defaults_and_frozen():
    t = FirmTypeSpec(kappa=2.0, target=4.0)
    assert t.nonstrategic_size == 0.0
    with pytest.raises(dataclasses.FrozenInstanceError):
        t.kappa = 9.0


def test_scenario_coerces_tuples_and_stacks_vectors():
    s = Scenario(firm1_types=[(1.0, 3.0)], firm2_types=[(2.0, 7.0, 0.5)],
                 prior=[[1.0]])
    assert s.firm1_types[0] == FirmTypeSpec(1.0, 3.0)
    assert s.firm2_types[0].nonstrategic_size == 0.5
    assert s.k == 1 and s.m == 1
    assert np.array_equal(s.kappa_vector(), [1.0, 2.0])
    assert np.array_equal(s.target_vector(), [3.0, 7.0])
    assert np.array_equal(s.nonstrategic_vector(), [0.0, 0.5])
    assert s.types_of(2) is s.firm2_types
    with pytest.raises(ValueError):
        s.types_of(3)


def test_validate_accepts_fixture():
    report = validate(make_scenario())
    assert report.ok
    assert report.violations == []


@pytest.mark.parametrize("mutate,needle", [
    (dict(prior=[[0.5, 0.5]]), "prior: expected shape"),
    (dict(prior=[[0.40, 0.20], [0.15, 0.30]]), "sum != 1"),
    (dict(prior=[[0.55, -0.05], [0.25, 0.25]]), ">= 0"),
    (dict(prior=[[0.5, 0.5], [0.0, 0.0]]), "zero marginal for a firm-1 type"),
    (dict(prior=[[0.5, 0.0], [0.5, 0.0]]), "zero marginal for a firm-2 type"),
    (dict(firm1_types=[FirmTypeSpec(-1.0, 3.0), FirmTypeSpec(3.0, 5.0)]),
     "firm1[0].kappa"),
    (dict(firm2_types=[FirmTypeSpec(2.0, np.inf), FirmTypeSpec(15.0, 5.0)]),
     "firm2[0].target"),
    (dict(firm1_types=[]), "at least one type"),
])
def test_validate_names_field_and_rule(mutate, needle):
    report = validate(make_scenario(**mutate))
    assert not report.ok
    assert any(needle in v for v in report.violations), report.violations


def test_conditionals_two_type_values():
    bel = conditionals([[0.40, 0.20], [0.15, 0.25]])
    assert np.allclose(bel.p1, [[2 / 3, 1 / 3], [0.375, 0.625]], rtol=0, atol=1e-15)
    assert np.allclose(bel.p2, [[0.40 / 0.55, 0.15 / 0.55],
                                [0.20 / 0.45, 0.25 / 0.45]], rtol=0, atol=1e-15)


def test_conditionals_rows_sum_to_one_and_halving():
    rng = np.random.default_rng(0)
    for _ in range(20):
        p = rng.uniform(0.05, 1.0, size=rng.integers(1, 5, size=2))
        bel = conditionals(p / p.sum())
        assert np.max(np.abs(bel.p1.sum(axis=1) - 1.0)) <= 1e-12
        assert np.max(np.abs(bel.p2.sum(axis=1) - 1.0)) <= 1e-12
        assert np.array_equal(bel.pi1, 0.5 * bel.p1)
        assert np.array_equal(bel.pi2, 0.5 * bel.p2)


def test_conditionals_renormalizes_only_within_tolerance():
    p = np.array([[0.40, 0.20], [0.15, 0.25]])
    bel = conditionals(p * (1.0 + 5e-10))  # inside tolerance: accepted
    assert np.max(np.abs(bel.p1.sum(axis=1) - 1.0)) <= 1e-12
    with pytest.raises(InputError):
        conditionals(p * 1.1)  # way off: rejected


def test_conditionals_rejects_zero_marginal_and_bad_entries():
    with pytest.raises(InputError):
        conditionals([[0.5, 0.5], [0.0, 0.0]])
    with pytest.raises(InputError):
        conditionals([[1.2, -0.2]])
    with pytest.raises(InputError):
        conditionals([0.5, 0.5])  # 1-D, not a matrix


def test_belief_matrices_explicit_halves_respected():
    p1 = np.array([[1.0]])
    custom = np.array([[0.125]])
    bel = BeliefMatrices(p1=p1, p2=p1, pi1=custom, pi2=custom)
    assert bel.pi1 is custom
    auto = BeliefMatrices(p1=p1, p2=p1)
    assert np.array_equal(auto.pi1, 0.5 * p1)
