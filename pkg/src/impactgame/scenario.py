"""Scenario data model: firm types, common prior, conditional beliefs.

A scenario is two lists of firm types plus a joint probability matrix
over which pair of types is active.  Each type bundles the market
impact it believes in, its target quantity, and the size of a
non-strategic background trader it believes exists (0 = none).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

__all__ = [
    "FirmTypeSpec",
    "Scenario",
    "BeliefMatrices",
    "ValidationReport",
    "validate",
    "conditionals",
]

PRIOR_SUM_TOL = 1e-9


@dataclass(frozen=True)
class FirmTypeSpec:
    """One firm type: (kappa, target, nonstrategic_size)."""

    kappa: float
    target: float
    nonstrategic_size: float = 0.0


@dataclass(eq=False)
class Scenario:
    firm1_types: list
    firm2_types: list
    prior: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        self.prior = np.asarray(self.prior, dtype=float)
        self.firm1_types = [t if isinstance(t, FirmTypeSpec) else FirmTypeSpec(*t)
                            for t in self.firm1_types]
        self.firm2_types = [t if isinstance(t, FirmTypeSpec) else FirmTypeSpec(*t)
                            for t in self.firm2_types]

    @property
    def k(self):
        """Number of firm-1 types."""
        return len(self.firm1_types)

    @property
    def m(self):
        """Number of firm-2 types."""
        return len(self.firm2_types)

    def kappa_vector(self):
        """Stacked per-type impact coefficients (firm 1 first)."""
        return np.array([t.kappa for t in self.firm1_types]
                        + [t.kappa for t in self.firm2_types])

    def target_vector(self):
        """Stacked per-type targets (firm 1 first)."""
        return np.array([t.target for t in self.firm1_types]
                        + [t.target for t in self.firm2_types])

    def nonstrategic_vector(self):
        """Stacked per-type believed non-strategic sizes (firm 1 first)."""
        return np.array([t.nonstrategic_size for t in self.firm1_types]
                        + [t.nonstrategic_size for t in self.firm2_types])

    def types_of(self, firm):
        if firm == 1:
            return self.firm1_types
        if firm == 2:
            return self.firm2_types
        raise ValueError(f"firm must be 1 or 2, got {firm!r}")


@dataclass
class BeliefMatrices:
    """Conditional beliefs and their halved copies used in system assembly.

    p1[k][m] is firm 1 type k's probability that firm 2 is type m;
    p2[m][k] the mirror image.  pi1/pi2 are p1/p2 halved, which is the
    form the coupled stationarity system wants.
    """

    p1: np.ndarray
    p2: np.ndarray
    pi1: np.ndarray = field(default=None)
    pi2: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.pi1 is None:
            self.pi1 = 0.5 * self.p1
        if self.pi2 is None:
            self.pi2 = 0.5 * self.p2


@dataclass
class ValidationReport:
    ok: bool
    violations: list


def validate(scenario):
    """Check every scenario invariant; violations are data, not exceptions."""
    v = []
    kk, mm = scenario.k, scenario.m
    if kk < 1:
        v.append("firm1_types: need at least one type")
    if mm < 1:
        v.append("firm2_types: need at least one type")
    for firm, types in (("firm1", scenario.firm1_types), ("firm2", scenario.firm2_types)):
        for i, t in enumerate(types):
            if not np.isfinite(t.kappa) or t.kappa < 0:
                v.append(f"{firm}[{i}].kappa: must be finite and >= 0, got {t.kappa}")
            if not np.isfinite(t.target):
                v.append(f"{firm}[{i}].target: must be finite, got {t.target}")
            if not np.isfinite(t.nonstrategic_size):
                v.append(f"{firm}[{i}].nonstrategic_size: must be finite, "
                         f"got {t.nonstrategic_size}")
    p = scenario.prior
    if p.ndim != 2 or p.shape != (kk, mm):
        v.append(f"prior: expected shape ({kk}, {mm}), got {p.shape}")
        return ValidationReport(ok=False, violations=v)
    if not np.all(np.isfinite(p)):
        v.append("prior: entries must be finite")
    elif np.any(p < 0):
        v.append("prior: entries must be >= 0")
    else:
        total = p.sum()
        if abs(total - 1.0) > PRIOR_SUM_TOL:
            v.append(f"prior: sum != 1 (got {total!r}, tolerance {PRIOR_SUM_TOL})")
        if np.any(p.sum(axis=1) <= 0):
            v.append("prior: zero marginal for a firm-1 type (conditional undefined)")
        if np.any(p.sum(axis=0) <= 0):
            v.append("prior: zero marginal for a firm-2 type (conditional undefined)")
    return ValidationReport(ok=not v, violations=v)


def conditionals(prior):
    """Conditional beliefs of every type from the common prior.

    p1 row-normalizes the prior, p2 column-normalizes and transposes it.
    A prior whose total is within PRIOR_SUM_TOL of 1 is renormalized
    first (conditionals are scale-invariant, so this only tidies the
    stored copies); anything further off is rejected.
    """
    p = np.asarray(prior, dtype=float)
    if p.ndim != 2:
        raise InputError(f"prior must be a matrix, got shape {p.shape}")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise InputError("prior entries must be finite and >= 0")
    total = p.sum()
    if abs(total - 1.0) > PRIOR_SUM_TOL:
        raise InputError(f"prior sum != 1 (got {total!r})")
    p = p / total
    row = p.sum(axis=1)
    col = p.sum(axis=0)
    if np.any(row <= 0):
        raise InputError("zero marginal for a firm-1 type: conditionals undefined")
    if np.any(col <= 0):
        raise InputError("zero marginal for a firm-2 type: conditionals undefined")
    p1 = p / row[:, None]
    p2 = (p / col[None, :]).T
    return BeliefMatrices(p1=p1, p2=p2)
