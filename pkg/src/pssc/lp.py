"""Dense linear programming front end over the simplex kernel.

Solves   min c@x   s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lb <= x <= ub
with free variables allowed (the default bounds are -inf/+inf). This is
the single LP entry point used by the polytope machinery, the QP
feasibility phase, and the steady-state setpoint oracle.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels import INFEASIBLE, ITER_LIMIT, OPTIMAL, UNBOUNDED

_STATUS_NAMES = {
    OPTIMAL: "optimal",
    INFEASIBLE: "infeasible",
    UNBOUNDED: "unbounded",
    ITER_LIMIT: "iteration_limit",
}


@dataclass(frozen=True)
class LpResult:
    status: str
    x: np.ndarray | None
    objective: float | None
    duals_ub: np.ndarray | None
    duals_eq: np.ndarray | None
    iterations: int

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _as_matrix(M, ncols):
    if M is None:
        return np.zeros((0, ncols))
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return M


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None,
             lb=None, ub=None, tol=1e-9, maxiter=20000) -> LpResult:
    """Solve a dense LP; see module docstring for the problem form."""
    c = np.asarray(c, dtype=float).ravel()
    n = c.shape[0]
    A_ub = _as_matrix(A_ub, n)
    A_eq = _as_matrix(A_eq, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).ravel()
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).ravel()
    if A_ub.shape != (b_ub.shape[0], n) or A_eq.shape != (b_eq.shape[0], n):
        raise ValueError("inconsistent LP dimensions")
    lb = np.full(n, -np.inf) if lb is None else np.asarray(lb, dtype=float).ravel()
    ub = np.full(n, np.inf) if ub is None else np.asarray(ub, dtype=float).ravel()

    m_ub = A_ub.shape[0]
    m_eq = A_eq.shape[0]
    me = m_ub + m_eq

    if me == 0:
        return _solve_bounds_only(c, lb, ub)

    # standard form: slack column per inequality row
    nt = n + m_ub
    A = np.zeros((me, nt))
    A[:m_ub, :n] = A_ub
    A[:m_ub, n:] = np.eye(m_ub)
    A[m_ub:, :n] = A_eq
    b = np.concatenate((b_ub, b_eq))

    # row equilibration keeps pivot magnitudes sane
    scale = np.abs(A).max(axis=1)
    scale[scale < 1e-300] = 1.0
    A = A / scale[:, None]
    b = b / scale

    lbs = np.concatenate((lb, np.zeros(m_ub)))
    ubs = np.concatenate((ub, np.full(m_ub, np.inf)))
    cs = np.concatenate((c, np.zeros(m_ub)))

    status, x, y, iters, _ = _kernels.simplex_core(
        np.ascontiguousarray(A), np.ascontiguousarray(b),
        np.ascontiguousarray(cs), np.ascontiguousarray(lbs),
        np.ascontiguousarray(ubs), maxiter, tol, 100)

    name = _STATUS_NAMES[int(status)]
    if name == "optimal":
        xs = x[:n]
        yr = y / scale
        return LpResult(name, xs, float(c @ xs), -yr[:m_ub], -yr[m_ub:], iters)
    xs = x[:n] if name != "infeasible" else None
    return LpResult(name, xs, None, None, None, iters)


def _solve_bounds_only(c, lb, ub) -> LpResult:
    x = np.zeros_like(c)
    for j, cj in enumerate(c):
        if cj > 0:
            if lb[j] == -np.inf:
                return LpResult("unbounded", None, None, None, None, 0)
            x[j] = lb[j]
        elif cj < 0:
            if ub[j] == np.inf:
                return LpResult("unbounded", None, None, None, None, 0)
            x[j] = ub[j]
        else:
            if lb[j] > -np.inf:
                x[j] = lb[j]
            elif ub[j] < np.inf:
                x[j] = ub[j]
    if np.any(lb > ub):
        return LpResult("infeasible", None, None, None, None, 0)
    return LpResult("optimal", x, float(c @ x), np.zeros(0), np.zeros(0), 0)
