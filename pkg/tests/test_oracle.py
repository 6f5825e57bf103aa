import numpy as np
import pytest

from impactgame import equilibrium, oracle
from impactgame.scenario import FirmTypeSpec, conditionals


def test_discrete_strategy_endpoints():
    ds = oracle.discrete_best_response([], [], kappa=1.0, target=2.0, b=0.0, n=16)
    assert ds.values[0] == 0.0
    assert ds.values[-1] == 2.0
    assert ds.times[0] == 0.0 and ds.times[-1] == 1.0
    assert len(ds.values) == 17


def test_discrete_best_response_needs_enough_panels():
    with pytest.raises(ValueError):
        oracle.discrete_best_response([], [], 1.0, 1.0, 0.0, n=3)


def test_lone_trader_without_background_is_linear():
    # nothing to react to: constant-rate schedule is optimal
    ds = oracle.discrete_best_response([], [], kappa=2.0, target=3.0, b=0.0, n=32)
    assert np.max(np.abs(ds.values - 3.0 * ds.times)) <= 1e-12


def test_best_response_nodally_exact_on_quadratic():
    # against a pure background trader the optimum is a parabola, which the
    # three-point stencil reproduces exactly at the nodes
    for n in (8, 64):
        ds = oracle.discrete_best_response([], [], kappa=1.0, target=1.0,
                                           b=2.0, n=n)
        exact = -ds.times ** 2 + 2.0 * ds.times
        assert np.max(np.abs(ds.values - exact)) <= 1e-12


def test_best_response_determinism(two_type, two_type_solution):
    grid = np.linspace(0.0, 1.0, 257)
    traj = equilibrium.sample(two_type_solution, grid)
    opp = np.stack([traj.component(2, m).positions for m in range(2)])
    bel = conditionals(two_type.prior)
    a = oracle.discrete_best_response(opp, bel.p1[0], 1.0, 3.0, 0.0, 256)
    b = oracle.discrete_best_response(opp, bel.p1[0], 1.0, 3.0, 0.0, 256)
    assert np.array_equal(a.values, b.values)


def test_best_response_second_order_convergence_to_solver(two_type,
                                                          two_type_solution):
    bel = conditionals(two_type.prior)
    spec = two_type.firm1_types[0]
    errors = []
    for n in (256, 512, 1024):
        grid = np.linspace(0.0, 1.0, n + 1)
        traj = equilibrium.sample(two_type_solution, grid)
        opp = np.stack([traj.component(2, m).positions for m in range(2)])
        ds = oracle.discrete_best_response(opp, bel.p1[0], spec.kappa,
                                           spec.target, 0.0, n)
        errors.append(np.max(np.abs(ds.values - traj.component(1, 0).positions)))
    ratios = [errors[i] / errors[i + 1] for i in range(2)]
    assert all(3.0 <= r <= 5.0 for r in ratios), (errors, ratios)


def test_el_residual_tiny_at_equilibrium(two_type, three_type, goliath):
    grid = np.linspace(0.0, 1.0, 1001)
    for scen in (two_type, three_type, goliath):
        sol = equilibrium.solve(scen)
        assert oracle.el_residual(sol, scen, grid) <= 1e-10


def test_el_residual_detects_corruption(two_type, two_type_solution):
    # shifting v0 alone still solves the (linear) flow equations, so corrupt
    # the forcing vector and the flow matrix instead -- both must light up
    import dataclasses
    grid = np.linspace(0.0, 1.0, 101)
    bad_c = dataclasses.replace(two_type_solution,
                                c=two_type_solution.c + 0.05)
    assert oracle.el_residual(bad_c, two_type, grid) > 1e-3
    bad_m = dataclasses.replace(two_type_solution,
                                m=two_type_solution.m + 0.05)
    assert oracle.el_residual(bad_m, two_type, grid) > 1e-3


def test_deviation_test_structure_and_determinism(two_type, two_type_solution):
    rep1 = oracle.deviation_test(two_type_solution, two_type, trials=25,
                                 epsilon=1e-3, seed=7)
    rep2 = oracle.deviation_test(two_type_solution, two_type, trials=25,
                                 epsilon=1e-3, seed=7)
    assert rep1 == rep2
    assert len(rep1.per_type) == 4
    assert {(d["firm"], d["type_index"]) for d in rep1.per_type} == {
        (1, 0), (1, 1), (2, 0), (2, 1)}
    assert all(d["min_gain"] >= -1e-8 for d in rep1.per_type)
    assert rep1.min_deviation_gain == min(d["min_gain"] for d in rep1.per_type)
    assert rep1.max_el_residual <= 1e-10


def test_deviation_test_flags_non_equilibrium(two_type, two_type_solution):
    import dataclasses
    wrong = dataclasses.replace(two_type_solution,
                                c=two_type_solution.c + 0.05)
    rep = oracle.deviation_test(wrong, two_type, trials=50, epsilon=1e-3, seed=0)
    assert rep.min_deviation_gain < -1e-8


def test_deviation_test_argument_validation(two_type, two_type_solution):
    with pytest.raises(ValueError):
        oracle.deviation_test(two_type_solution, two_type, trials=0,
                              epsilon=1e-3, seed=0)
    with pytest.raises(ValueError):
        oracle.deviation_test(two_type_solution, two_type, trials=5,
                              epsilon=0.0, seed=0)


def test_background_doubling_consistent_with_closed_form():
    # lone-firm best response against background b: the response must track
    # single_firm_vs_nonstrategic for any (kappa, f, b)
    for kappa, f, b in [(1.0, 1.0, 2.0), (3.0, 2.0, 1.0), (0.5, -1.0, 4.0)]:
        a2, a1, a0 = equilibrium.single_firm_vs_nonstrategic(kappa, f, b)
        ds = oracle.discrete_best_response([], [], kappa, f, b, n=64)
        exact = a2 * ds.times ** 2 + a1 * ds.times + a0
        assert np.max(np.abs(ds.values - exact)) <= 1e-10
