"""Equilibrium trading with typed beliefs.

Two firms trade toward fixed targets over [0, 1] under linear price
impact.  Each firm knows its own type (impact weight, target, optional
non-strategic background flow) but only a prior over the opponent's.
This package assembles the coupled linear optimality system implied by
mutual best response, solves the resulting two-point boundary problem
in closed form via matrix exponentials, and evaluates realized and
expected trading costs, with an independent discrete-time oracle for
verification.
"""

from .errors import InputError, NumericalError
from .matode import LeastSquaresResult, mat_exp, phi1_apply, phi_maps, solve_least_squares
from .scenario import (
    BeliefMatrices,
    FirmTypeSpec,
    Scenario,
    ValidationReport,
    conditionals,
    validate,
)
from .equilibrium import (
    EquilibriumSolution,
    SystemMatrices,
    Trajectory,
    assemble_system,
    complete_info_pair,
    forcing_vector,
    sample,
    single_firm_vs_nonstrategic,
    solve,
    system_matrix,
)
from .costs import (
    CostRow,
    CumulativeCurve,
    cost_report,
    cumulative_curve,
    cumulative_sample,
    expected_cost,
    quadrature_sample,
    realized_cost,
)
from .oracle import (
    DiscreteStrategy,
    VerificationReport,
    deviation_test,
    discrete_best_response,
    el_residual,
)
from .cli import load_scenario, scenario_from_dict, scenario_to_dict

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "NumericalError",
    "LeastSquaresResult",
    "mat_exp",
    "phi1_apply",
    "phi_maps",
    "solve_least_squares",
    "BeliefMatrices",
    "FirmTypeSpec",
    "Scenario",
    "ValidationReport",
    "conditionals",
    "validate",
    "EquilibriumSolution",
    "SystemMatrices",
    "Trajectory",
    "assemble_system",
    "complete_info_pair",
    "forcing_vector",
    "sample",
    "single_firm_vs_nonstrategic",
    "solve",
    "system_matrix",
    "CostRow",
    "CumulativeCurve",
    "cost_report",
    "cumulative_curve",
    "cumulative_sample",
    "expected_cost",
    "quadrature_sample",
    "realized_cost",
    "DiscreteStrategy",
    "VerificationReport",
    "deviation_test",
    "discrete_best_response",
    "el_residual",
    "load_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "__version__",
]
