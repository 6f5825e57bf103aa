"""Independent verification of equilibrium profiles.

Three checks, none of which share solve logic with the equilibrium
module: a discretized best response (finite-dimensional quadratic
program solved as a banded linear system), the pointwise stationarity
residual of the coupled system, and randomized deviation probes of the
expected-cost functional.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import matode
from .errors import NumericalError
from .scenario import conditionals

__all__ = [
    "DiscreteStrategy",
    "VerificationReport",
    "discrete_best_response",
    "el_residual",
    "deviation_test",
]


@dataclass
class DiscreteStrategy:
    """Piecewise-linear strategy: holdings at times j/n for j = 0..n."""

    n: int
    values: np.ndarray

    @property
    def times(self):
        return np.arange(self.n + 1) / self.n


def discrete_best_response(opponent_profile, beliefs, kappa, target, b, n):
    """Cost-minimizing discrete strategy against a fixed opponent profile.

    The expected-cost functional is discretized with midpoint rates
    (s_{j+1}-s_j)*n and trapezoidal positions, giving a positive-definite
    quadratic form in the interior holdings; its stationarity conditions
    form a symmetric tridiagonal system.  The trader's own permanent-
    impact term telescopes to a constant and drops out.

    `opponent_profile` holds one row of opponent positions per opponent
    type, sampled at times j/n; `beliefs` weights them.  `b` adds a
    non-strategic background trader moving b*t, entering with the
    lone-firm weighting so that with no strategic opponent the response
    converges to single_firm_vs_nonstrategic's closed form.
    """
    n = int(n)
    if n < 4:
        raise ValueError(f"need at least 4 panels, got {n}")
    beliefs = np.asarray(beliefs, dtype=float)
    opp = np.asarray(opponent_profile, dtype=float).reshape(len(beliefs), n + 1)
    t = np.arange(n + 1) / n
    h = 1.0 / n

    agg = beliefs @ opp if len(beliefs) else np.zeros(n + 1)
    agg = agg + 2.0 * b * t
    rho = np.diff(agg) / h                    # aggregate rate on each panel
    mu = 0.5 * (agg[:-1] + agg[1:])           # aggregate position at midpoints

    rhs = np.diff(rho) + kappa * np.diff(mu)  # stationarity at interior nodes
    rhs[-1] += (2.0 / h) * target
    band = np.empty((2, n - 1))
    band[0, :] = -2.0 / h
    band[1, :] = 4.0 / h
    try:
        interior = scipy.linalg.solveh_banded(band, rhs)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError("discrete cost Hessian is not positive definite") from exc
    values = np.concatenate([[0.0], interior, [target]])
    return DiscreteStrategy(n=n, values=values)


def _system_blocks(scenario):
    """Assemble the stationarity-system blocks straight from the beliefs."""
    bel = conditionals(scenario.prior)
    kk, mm = scenario.k, scenario.m
    nn = kk + mm
    a = np.eye(nn)
    a[:kk, kk:] = bel.pi1
    a[kk:, :kk] = bel.pi2
    bmat = np.zeros((nn, nn))
    bmat[:kk, kk:] = np.diag([tt.kappa for tt in scenario.firm1_types]) @ bel.pi1
    bmat[kk:, :kk] = np.diag([tt.kappa for tt in scenario.firm2_types]) @ bel.pi2
    return a, bmat


def _flow(solution, ts):
    """Closed-form positions and rates at arbitrary times in [0, 1]."""
    nn = solution.m.shape[0]
    aug = np.zeros((nn + 3, nn + 3))
    aug[:nn, :nn] = solution.m
    aug[:nn, nn] = solution.v0
    aug[:nn, nn + 1] = solution.c
    aug[nn + 1, nn + 2] = 1.0
    blocks = matode.mat_exp(np.asarray(ts)[:, None, None] * aug[None, :, :])
    positions = blocks[:, :nn, nn] + blocks[:, :nn, nn + 2]
    rates = blocks[:, :nn, :nn] @ solution.v0 + blocks[:, :nn, nn + 1]
    return positions, rates


def el_residual(solution, scenario, grid):
    """Sup-norm stationarity residual of the coupled system on a grid.

    Per firm type the residual is

        sddot_self + (1/2) sum_opp pi(opp) (sddot_opp + kappa sdot_opp)
        + (1/2) kappa b_self

    evaluated from the closed-form rates (sddot = M v + c), i.e. the
    rows of A vdot + B v + (1/2) kappa*b.
    """
    grid = np.asarray(grid, dtype=float)
    a, bmat = _system_blocks(scenario)
    kb = scenario.kappa_vector() * scenario.nonstrategic_vector()
    _, rates = _flow(solution, grid)
    vdot = rates @ solution.m.T + solution.c
    resid = vdot @ a.T + rates @ bmat.T + 0.5 * kb
    return float(np.max(np.abs(resid)))


@dataclass
class VerificationReport:
    max_el_residual: float
    min_deviation_gain: float
    per_type: list


_QUAD_ORDER = 8
_QUAD_PANELS = 64
_N_SINES = 8


def deviation_test(solution, scenario, trials, epsilon, seed):
    """Probe optimality: perturb each type's strategy and recompute its
    expected cost.

    Perturbations are random unit-L2 mixtures of sin(pi j t), j=1..8,
    which vanish at both endpoints, scaled by epsilon.  At a true
    equilibrium every cost change is +epsilon^2 * ||eta_dot||^2 > 0, so
    min_deviation_gain hovers above zero; a negative value at tolerance
    beyond roundoff disproves optimality.  Fixed seed => identical report.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    rng = np.random.default_rng(seed)

    x, w = np.polynomial.legendre.leggauss(_QUAD_ORDER)
    bounds = np.linspace(0.0, 1.0, _QUAD_PANELS + 1)
    half = 0.5 * np.diff(bounds)
    ts = (0.5 * (bounds[:-1] + bounds[1:])[:, None] + half[:, None] * x).ravel()
    wq = (half[:, None] * w).ravel()

    positions, rates = _flow(solution, ts)
    bel = conditionals(scenario.prior)
    kk = scenario.k

    js = np.arange(1, _N_SINES + 1)
    sin_b = np.sin(np.pi * js[:, None] * ts[None, :])
    cos_b = np.pi * js[:, None] * np.cos(np.pi * js[:, None] * ts[None, :])

    per_type = []
    overall = np.inf
    for firm, types in ((1, scenario.firm1_types), (2, scenario.firm2_types)):
        for idx, spec in enumerate(types):
            col = idx if firm == 1 else kk + idx
            opp_cols = slice(kk, None) if firm == 1 else slice(0, kk)
            pi_row = bel.p1[idx] if firm == 1 else bel.p2[idx]
            s1, v1 = positions[:, col], rates[:, col]
            rho = rates[:, opp_cols] @ pi_row + spec.nonstrategic_size
            pos_bg = positions[:, opp_cols] @ pi_row + spec.nonstrategic_size * ts

            coeffs = rng.standard_normal((trials, _N_SINES))
            coeffs /= np.sqrt(0.5 * (coeffs ** 2).sum(axis=1))[:, None]
            eta = coeffs @ sin_b
            eta_dot = coeffs @ cos_b

            lin = (eta_dot @ (wq * (2.0 * v1 + rho + spec.kappa * (s1 + pos_bg)))
                   + eta @ (wq * (spec.kappa * v1)))
            quad = ((eta_dot ** 2) @ wq + spec.kappa * ((eta * eta_dot) @ wq))
            gains = epsilon * lin + epsilon ** 2 * quad
            low = float(gains.min())
            per_type.append({"firm": firm, "type_index": idx, "min_gain": low})
            overall = min(overall, low)

    residual = el_residual(solution, scenario, np.linspace(0.0, 1.0, 1001))
    return VerificationReport(
        max_el_residual=residual,
        min_deviation_gain=float(overall),
        per_type=per_type,
    )
