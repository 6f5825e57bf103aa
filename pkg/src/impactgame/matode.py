"""Dense linear-ODE kernels.

Everything the equilibrium solver needs from linear algebra lives here:
matrix exponentials, the phi-maps that integrate a propagator without
ever inverting it, and a rank-aware least-squares solve.  All functions
are pure and operate on small dense arrays.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

__all__ = [
    "LeastSquaresResult",
    "mat_exp",
    "phi1_apply",
    "phi_maps",
    "solve_least_squares",
]


def mat_exp(m, t=1.0):
    """Compute e^{M t} via scaling-and-squaring (Pade order 13).

    `m` may be a single square matrix or a stack of them with shape
    (..., n, n); the exponential is taken of each slice.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"mat_exp expects square matrices, got shape {m.shape}")
    return scipy.linalg.expm(m * float(t))


def phi1_apply(m, t, v):
    """Apply the integrated propagator: Phi(t) v = (integral_0^t e^{M u} du) v.

    Computed from the augmented block exponential

        exp [[M t, v t], [0, 0]]  ->  [[e^{M t}, Phi(t) v], [0, I]]

    so the result is well defined even when M is singular.  For
    invertible M it equals (e^{M t} - I) M^{-1} v.  `v` may be a vector
    or an (n, k) matrix of columns.
    """
    m = np.asarray(m, dtype=float)
    v = np.asarray(v, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"phi1_apply expects a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if v.shape[0] != n:
        raise ValueError(f"vector length {v.shape[0]} does not match matrix size {n}")
    cols = v.reshape(n, -1)
    k = cols.shape[1]
    aug = np.zeros((n + k, n + k))
    aug[:n, :n] = m * t
    aug[:n, n:] = cols * t
    return scipy.linalg.expm(aug)[:n, n:].reshape(v.shape)


def phi_maps(m, t=1.0):
    """Return (e^{M t}, Phi(t), Psi(t)) in one augmented exponential.

    Phi(t) = integral_0^t e^{M u} du and Psi(t) = integral_0^t Phi(u) du
    are read off the top block-row of

        exp [[M t, I t, 0], [0, 0, I t], [0, 0, 0]]

    which is exact for singular M (the nilpotent lower blocks encode the
    monomials t, t^2/2 driving the integrals).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"phi_maps expects a square matrix, got shape {m.shape}")
    n = m.shape[0]
    eye = np.eye(n)
    aug = np.zeros((3 * n, 3 * n))
    aug[:n, :n] = m * t
    aug[:n, n:2 * n] = eye * t
    aug[n:2 * n, 2 * n:] = eye * t
    big = scipy.linalg.expm(aug)
    return big[:n, :n], big[:n, n:2 * n], big[:n, 2 * n:]


class LeastSquaresResult(NamedTuple):
    x: np.ndarray
    rank: int
    rank_deficient: bool


def solve_least_squares(a, y):
    """Minimum-norm least squares min_X ||A X - Y||_F with a rank flag.

    Uses column-pivoted QR (LAPACK gelsy).  The rank threshold drops
    pivots below max(rows, cols) * eps relative to the largest column
    norm, and `rank_deficient` reports whether that truncation fired.
    Equals A^{-1} Y whenever A is square and nonsingular.
    """
    a = np.asarray(a, dtype=float)
    y = np.asarray(y, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"solve_least_squares expects a matrix, got shape {a.shape}")
    if a.shape[0] < a.shape[1]:
        raise ValueError(
            f"system is underdetermined: {a.shape[0]} rows < {a.shape[1]} columns"
        )
    if y.shape[0] != a.shape[0]:
        raise ValueError(f"right-hand side length {y.shape[0]} != {a.shape[0]} rows")
    cond = max(a.shape) * np.finfo(float).eps
    x, _, rank, _ = scipy.linalg.lstsq(a, y, cond=cond, lapack_driver="gelsy")
    return LeastSquaresResult(x=x, rank=rank, rank_deficient=rank < a.shape[1])
