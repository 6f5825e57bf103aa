"""Coupled stationarity system and closed-form equilibrium strategies.

For two firms with K and M types, a mutual-best-response profile makes
every type's trading rate satisfy a linear first-order system

    A vdot = -B v - (1/2) kappa*b,      v = stacked rates (K+M,)

where A couples each type to its belief-weighted opponents, B carries
the permanent-impact terms, and kappa*b is the elementwise product of
per-type impact coefficients with believed non-strategic sizes.  With
M := -A^+ B and c := -(1/2) A^+ (kappa*b) this is vdot = M v + c, whose
solution - expressed through integrated propagators so a singular M
costs nothing - is

    v(t) = e^{Mt} v0 + Phi(t) c,   s(t) = Phi(t) v0 + Psi(t) c,

with v0 fixed by the boundary condition s(1) = targets.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import matode
from .errors import InputError, NumericalError
from .scenario import Scenario, conditionals, validate

__all__ = [
    "SystemMatrices",
    "EquilibriumSolution",
    "Trajectory",
    "assemble_system",
    "system_matrix",
    "forcing_vector",
    "solve",
    "sample",
    "complete_info_pair",
    "single_firm_vs_nonstrategic",
]


@dataclass
class SystemMatrices:
    a: np.ndarray
    b: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


@dataclass
class EquilibriumSolution:
    m: np.ndarray
    v0: np.ndarray
    c: np.ndarray
    targets: np.ndarray
    scenario: Scenario

    @property
    def k_split(self):
        return self.scenario.k


@dataclass
class Trajectory:
    """Sampled strategy profile: one column per firm type (firm 1 first)."""

    grid: np.ndarray
    positions: np.ndarray
    rates: np.ndarray
    k_split: int
    weights: np.ndarray = None   # quadrature weights, set by cost sampling
    marks: np.ndarray = None     # indices of designated output times

    def component(self, firm, index):
        col = index if firm == 1 else self.k_split + index
        n = self.positions.shape[1] - self.k_split
        if firm not in (1, 2):
            raise ValueError(f"firm must be 1 or 2, got {firm!r}")
        if not 0 <= index < (self.k_split if firm == 1 else n):
            raise IndexError(f"firm {firm} has no type {index}")
        return TrajectoryComponent(
            grid=self.grid,
            positions=self.positions[:, col],
            rates=self.rates[:, col],
            weights=self.weights,
            marks=self.marks,
        )


@dataclass
class TrajectoryComponent:
    grid: np.ndarray
    positions: np.ndarray
    rates: np.ndarray
    weights: np.ndarray = None
    marks: np.ndarray = None


def assemble_system(scenario):
    """Build A, B, D1, D2 from the scenario's beliefs and impact terms."""
    report = validate(scenario)
    if not report.ok:
        raise InputError("; ".join(report.violations))
    bel = conditionals(scenario.prior)
    kk, mm = scenario.k, scenario.m
    n = kk + mm
    d1 = np.diag([t.kappa for t in scenario.firm1_types])
    d2 = np.diag([t.kappa for t in scenario.firm2_types])
    a = np.eye(n)
    a[:kk, kk:] = bel.pi1
    a[kk:, :kk] = bel.pi2
    b = np.zeros((n, n))
    b[:kk, kk:] = d1 @ bel.pi1
    b[kk:, :kk] = d2 @ bel.pi2
    return SystemMatrices(a=a, b=b, d1=d1, d2=d2)


def system_matrix(sm, mode="normal_form"):
    """The rate-ODE generator M from (A, B).

    direct:      M = -A^{-1} B        (requires nonsingular A)
    normal_form: M = -(A^T A)^+ A^T B (least-squares, always defined)
    """
    if mode == "direct":
        try:
            return -scipy.linalg.solve(sm.a, sm.b)
        except scipy.linalg.LinAlgError as exc:
            raise NumericalError(
                "A is singular in direct mode; use mode='normal_form'"
            ) from exc
    if mode == "normal_form":
        return -matode.solve_least_squares(sm.a, sm.b).x
    raise ValueError(f"mode must be 'direct' or 'normal_form', got {mode!r}")


def forcing_vector(scenario, sm):
    """c = -(1/2) A^+ (kappa * b); identically zero when no type believes
    in a non-strategic trader."""
    kb = scenario.kappa_vector() * scenario.nonstrategic_vector()
    if not kb.any():
        return np.zeros(len(kb))
    return -0.5 * matode.solve_least_squares(sm.a, kb).x


def solve(scenario, mode="normal_form"):
    """Equilibrium strategy profile for every type of both firms.

    Returns the generator M, forcing c, and initial rates v0 chosen so
    each type starts flat and finishes exactly on target:
    Phi(1) v0 = f - Psi(1) c.
    """
    report = validate(scenario)
    if not report.ok:
        raise InputError("; ".join(report.violations))
    sm = assemble_system(scenario)
    m = system_matrix(sm, mode)
    c = forcing_vector(scenario, sm)
    f = scenario.target_vector()
    _, phi1, phi2 = matode.phi_maps(m, 1.0)
    if not (np.all(np.isfinite(phi1)) and np.all(np.isfinite(phi2))):
        raise NumericalError("propagator overflowed; impact coefficients too large")
    res = matode.solve_least_squares(phi1, f - phi2 @ c)
    if res.rank_deficient:
        raise NumericalError(
            f"boundary operator Phi(1) is rank deficient (rank {res.rank} of "
            f"{phi1.shape[1]}); the target condition s(1)=f cannot be enforced"
        )
    v0 = res.x
    if not np.all(np.isfinite(v0)):
        raise NumericalError("initial rates are not finite")
    return EquilibriumSolution(m=m, v0=v0, c=c, targets=f, scenario=scenario)


def sample(solution, grid):
    """Evaluate s(t) and sdot(t) on a grid via augmented exponentials.

    One block exponential per time sample yields e^{Mt}, Phi(t)v0,
    Phi(t)c and Psi(t)c simultaneously:

        exp [[M, v0 c 0], [0, N]] * t,   N = [[0,0,0],[0,0,1],[0,0,0]]

    The grid must increase strictly from 0 to 1 (positions start pinned
    at zero and the last row lands on the targets).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("grid must be a 1-D array with at least two times")
    if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must increase strictly from 0 to 1")
    n = solution.m.shape[0]
    aug = np.zeros((n + 3, n + 3))
    aug[:n, :n] = solution.m
    aug[:n, n] = solution.v0
    aug[:n, n + 1] = solution.c
    aug[n + 1, n + 2] = 1.0
    blocks = matode.mat_exp(grid[:, None, None] * aug[None, :, :])
    positions = blocks[:, :n, n] + blocks[:, :n, n + 2]          # Phi v0 + Psi c
    rates = blocks[:, :n, :n] @ solution.v0 + blocks[:, :n, n + 1]  # e^{Mt} v0 + Phi c
    return Trajectory(
        grid=grid,
        positions=positions,
        rates=rates,
        k_split=solution.k_split,
    )


def complete_info_pair(t1, t2):
    """Equilibrium when both firms' types are common knowledge."""
    return solve(Scenario(firm1_types=[t1], firm2_types=[t2], prior=[[1.0]]))


def single_firm_vs_nonstrategic(kappa, f, b):
    """Closed-form strategy of a lone firm facing a non-strategic trader
    of size b: coefficients (quadratic, linear, constant) of

        s(t) = -(kappa b / 2) t^2 + (f + kappa b / 2) t.

    Buying alongside a non-strategic buyer makes the firm eager: it
    front-loads to trade ahead of the flow that will move the price.
    """
    return (-0.5 * kappa * b, f + 0.5 * kappa * b, 0.0)
