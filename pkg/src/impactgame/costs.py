"""Implementation-cost evaluation of strategy profiles.

Realized cost of trading s_self against s_other under an evaluation
impact parameter kappa_e:

    C = integral_0^1 (sdot_self + sdot_other) sdot_self
        + kappa_e (s_self + s_other) sdot_self  dt

The integrands along equilibrium strategies are entire functions, so a
composite Gauss-Legendre rule (order 8, 64 panels by default) evaluates
them to machine precision.  Sampling grids built here carry their
quadrature weights with them; cost functions fall back to trapezoid
integration for plain grids.
"""

from dataclasses import dataclass

import numpy as np

from . import equilibrium
from .errors import InputError
from .scenario import conditionals

__all__ = [
    "CostRow",
    "CumulativeCurve",
    "quadrature_sample",
    "cumulative_sample",
    "realized_cost",
    "cumulative_curve",
    "expected_cost",
    "cost_report",
]

DEFAULT_PANELS = 64
DEFAULT_ORDER = 8


def _panel_rule(boundaries, order):
    """Composite Gauss-Legendre grid over the given panel boundaries.

    The boundaries themselves are inserted with zero weight so the grid
    is also a valid strategy-sampling grid (starts at 0, ends at 1) and
    partial integrals up to any boundary are plain prefix sums.
    Returns (grid, weights, marks) with marks indexing the boundaries.
    """
    x, w = np.polynomial.legendre.leggauss(order)
    npan = len(boundaries) - 1
    grid = np.empty(npan * (order + 1) + 1)
    weights = np.zeros_like(grid)
    marks = np.empty(npan + 1, dtype=int)
    pos = 0
    for i in range(npan):
        lo, hi = boundaries[i], boundaries[i + 1]
        half = 0.5 * (hi - lo)
        marks[i] = pos
        grid[pos] = lo
        pos += 1
        grid[pos:pos + order] = 0.5 * (lo + hi) + half * x
        weights[pos:pos + order] = half * w
        pos += order
    marks[npan] = pos
    grid[pos] = boundaries[-1]
    return grid, weights, marks


def quadrature_sample(solution, panels=DEFAULT_PANELS, order=DEFAULT_ORDER):
    """Sample a solution on the default cost-integration grid."""
    boundaries = np.linspace(0.0, 1.0, panels + 1)
    grid, weights, marks = _panel_rule(boundaries, order)
    traj = equilibrium.sample(solution, grid)
    traj.weights = weights
    traj.marks = marks
    return traj


def cumulative_sample(solution, times, order=DEFAULT_ORDER):
    """Sample a solution so that exact cost-to-date values exist at `times`.

    Each interval between consecutive output times becomes one
    quadrature panel, making the running integral exact at every mark.
    """
    times = np.asarray(times, dtype=float)
    if times[0] != 0.0 or times[-1] != 1.0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must increase strictly from 0 to 1")
    grid, weights, marks = _panel_rule(times, order)
    traj = equilibrium.sample(solution, grid)
    traj.weights = weights
    traj.marks = marks
    return traj


def _cost_integrand(traj_self, traj_other, eval_kappa):
    if not np.array_equal(traj_self.grid, traj_other.grid):
        raise ValueError("mismatched grids: both components must share one grid")
    vs, vo = traj_self.rates, traj_other.rates
    ss, so = traj_self.positions, traj_other.positions
    return (vs + vo) * vs + eval_kappa * (ss + so) * vs


def realized_cost(traj_self, traj_other, eval_kappa):
    """Total cost of trading the self component against the other one."""
    integrand = _cost_integrand(traj_self, traj_other, eval_kappa)
    if traj_self.weights is not None:
        return float(traj_self.weights @ integrand)
    return float(np.trapezoid(integrand, traj_self.grid))


@dataclass
class CumulativeCurve:
    grid: np.ndarray
    values: np.ndarray


def cumulative_curve(traj_self, traj_other, eval_kappa, grid):
    """Cost-to-date at each time in `grid` (the running cost integral).

    If the components were produced by cumulative_sample with matching
    marks the values are exact partial integrals; otherwise the sampled
    integrand is integrated by trapezoid and interpolated.
    """
    grid = np.asarray(grid, dtype=float)
    integrand = _cost_integrand(traj_self, traj_other, eval_kappa)
    marks = traj_self.marks
    if (marks is not None and traj_self.weights is not None
            and len(marks) == len(grid)
            and np.allclose(traj_self.grid[marks], grid, atol=1e-12)):
        values = np.cumsum(traj_self.weights * integrand)[marks]
        values[0] = 0.0
        return CumulativeCurve(grid=grid, values=values)
    steps = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(traj_self.grid)
    running = np.concatenate([[0.0], np.cumsum(steps)])
    return CumulativeCurve(grid=grid, values=np.interp(grid, traj_self.grid, running))


def expected_cost(firm, type_index, solution, scenario, _traj=None):
    """A type's expected cost: its conditional-belief mixture of realized
    costs against each opponent type, priced at its own believed kappa."""
    if firm not in (1, 2):
        raise InputError(f"firm must be 1 or 2, got {firm!r}")
    types = scenario.types_of(firm)
    if not 0 <= type_index < len(types):
        raise InputError(f"firm {firm} has no type index {type_index}")
    bel = conditionals(scenario.prior)
    weights = bel.p1[type_index] if firm == 1 else bel.p2[type_index]
    own = types[type_index]
    traj = _traj if _traj is not None else quadrature_sample(solution)
    mine = traj.component(firm, type_index)
    other = 2 if firm == 1 else 1
    return float(sum(
        w * realized_cost(mine, traj.component(other, j), own.kappa)
        for j, w in enumerate(weights)
    ))


@dataclass
class CostRow:
    firm1_type: int
    firm2_type: int
    eval_kappa: float
    cost1: float
    cost2: float
    exp1: float
    exp2: float
    normalized: bool


def cost_report(scenario, solution, eval_kappas, normalized=False):
    """Cost table: one block per active-type pair, one row per eval kappa.

    Normalization divides each firm's numbers by its active type's
    target, which requires those targets to be nonzero.
    """
    eval_kappas = list(eval_kappas)
    if not eval_kappas:
        raise InputError("eval_kappas must be nonempty")
    kk, mm = scenario.k, scenario.m
    if normalized:
        for firm, types in ((1, scenario.firm1_types), (2, scenario.firm2_types)):
            for i, t in enumerate(types):
                if t.target == 0:
                    raise InputError(
                        f"cannot normalize: firm {firm} type {i} has zero target")
    traj = quadrature_sample(solution)
    exp1 = [expected_cost(1, k, solution, scenario, _traj=traj) for k in range(kk)]
    exp2 = [expected_cost(2, m, solution, scenario, _traj=traj) for m in range(mm)]
    rows = []
    for k in range(kk):
        f1 = scenario.firm1_types[k].target
        comp1 = traj.component(1, k)
        for m in range(mm):
            f2 = scenario.firm2_types[m].target
            comp2 = traj.component(2, m)
            for ke in eval_kappas:
                c1 = realized_cost(comp1, comp2, ke)
                c2 = realized_cost(comp2, comp1, ke)
                if normalized:
                    rows.append(CostRow(k, m, ke, c1 / f1, c2 / f2,
                                        exp1[k] / f1, exp2[m] / f2, True))
                else:
                    rows.append(CostRow(k, m, ke, c1, c2, exp1[k], exp2[m], False))
    return rows
