"""Dense convex QP in standard form, solved by a primal active-set method.

    min 0.5 z' P z + q' z   s.t.   F_in z <= g_in,  F_eq z = g_eq

A feasibility LP provides the starting point when the warm-start hint is
absent or infeasible; the active-set iteration itself runs in the kernel
module. Optimal returns are KKT-certified; infeasibility is certified by
the LP's phase-1 objective.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IllConditioned
from .lp import solve_lp

_FEAS_TOL = 1e-8
_RIDGE = 1e-9


@dataclass(frozen=True)
class QpProblem:
    P: np.ndarray
    q: np.ndarray
    F_in: np.ndarray
    g_in: np.ndarray
    F_eq: np.ndarray
    g_eq: np.ndarray

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.P, dtype=float))
        nu = P.shape[0]
        q = np.asarray(self.q, dtype=float).ravel()
        if P.shape != (nu, nu) or q.shape[0] != nu:
            raise ValueError("P/q dimensions inconsistent")
        scale = max(1.0, np.abs(P).max())
        if np.abs(P - P.T).max() > 1e-12 * scale:
            raise ValueError("P must be symmetric (within 1e-12)")
        if nu <= 60:
            if np.linalg.eigvalsh(P).min() < -1e-10 * scale:
                raise ValueError("P must be positive semidefinite")
        else:
            try:
                np.linalg.cholesky(P + 1e-8 * scale * np.eye(nu))
            except np.linalg.LinAlgError:
                raise ValueError("P must be positive semidefinite") from None

        def mat(M):
            if M is None:
                return np.zeros((0, nu))
            M = np.asarray(M, dtype=float)
            return M.reshape(-1, nu) if M.size else np.zeros((0, nu))

        def vec(v):
            return np.zeros(0) if v is None else np.asarray(v, dtype=float).ravel()

        F_in = mat(self.F_in)
        g_in = vec(self.g_in)
        F_eq = mat(self.F_eq)
        g_eq = vec(self.g_eq)
        if F_in.shape[0] != g_in.shape[0] or F_eq.shape[0] != g_eq.shape[0]:
            raise ValueError("constraint row counts inconsistent")
        for name, arr in (("P", P), ("q", q), ("F_in", F_in), ("g_in", g_in),
                          ("F_eq", F_eq), ("g_eq", g_eq)):
            arr = np.ascontiguousarray(arr)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def nu(self) -> int:
        return self.P.shape[0]


@dataclass(frozen=True)
class QpSolution:
    status: str  # "optimal" | "infeasible" | "iteration_limit"
    z_star: np.ndarray | None
    duals_in: np.ndarray | None
    duals_eq: np.ndarray | None
    kkt_residual: float
    iterations: int
    active_set: np.ndarray | None
    solve_time: float

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


@dataclass
class WarmStart:
    z: np.ndarray | None = None
    active: np.ndarray | None = None


def kkt_residual(prob: QpProblem, z, lam, mu) -> float:
    """Scaled max violation over stationarity, feasibility, sign, and
    complementary slackness."""
    z = np.asarray(z, dtype=float)
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    Pz = prob.P @ z
    stat = Pz + prob.q
    if prob.F_in.shape[0]:
        stat = stat + prob.F_in.T @ lam
    if prob.F_eq.shape[0]:
        stat = stat + prob.F_eq.T @ mu
    sscale = 1.0 + np.abs(Pz).max(initial=0.0) + np.abs(prob.q).max(initial=0.0)
    r = np.abs(stat).max(initial=0.0) / sscale
    if prob.F_in.shape[0]:
        slack = prob.F_in @ z - prob.g_in
        gscale = 1.0 + np.abs(prob.g_in).max(initial=0.0)
        r = max(r, slack.max(initial=0.0) / gscale)
        r = max(r, -lam.min(initial=0.0))
        r = max(r, np.abs(lam * slack).max(initial=0.0) / gscale)
    if prob.F_eq.shape[0]:
        escale = 1.0 + np.abs(prob.g_eq).max(initial=0.0)
        r = max(r, np.abs(prob.F_eq @ z - prob.g_eq).max(initial=0.0) / escale)
    return float(r)


def _feasible_point(prob: QpProblem):
    """Phase-1 LP; returns (z, active_guess) or None when infeasible."""
    nu = prob.nu
    res = solve_lp(np.zeros(nu), A_ub=prob.F_in, b_ub=prob.g_in,
                   A_eq=prob.F_eq, b_eq=prob.g_eq)
    if res.status != "optimal":
        return None
    z = res.x
    act = np.zeros(prob.F_in.shape[0], dtype=np.int8)
    if prob.F_in.shape[0]:
        slack = prob.g_in - prob.F_in @ z
        act[np.abs(slack) <= 1e-9 * (1.0 + np.abs(prob.g_in))] = 1
    return z, act


def _is_feasible(prob: QpProblem, z) -> bool:
    tol = _FEAS_TOL * (1.0 + np.abs(z).max(initial=0.0))
    if prob.F_in.shape[0] and (prob.F_in @ z - prob.g_in).max() > tol:
        return False
    if prob.F_eq.shape[0] and np.abs(prob.F_eq @ z - prob.g_eq).max() > tol:
        return False
    return True


def solve_qp(prob: QpProblem, warm_start: WarmStart | None = None,
             tol: float = 1e-9, maxiter: int = 2000) -> QpSolution:
    """Solve the QP; deterministic given identical inputs and hints."""
    t0 = time.perf_counter()
    nin = prob.F_in.shape[0]

    z0 = None
    act0 = None
    if warm_start is not None and warm_start.z is not None:
        zw = np.asarray(warm_start.z, dtype=float).ravel()
        if zw.shape[0] == prob.nu and np.all(np.isfinite(zw)) and _is_feasible(prob, zw):
            z0 = zw
            act0 = np.zeros(nin, dtype=np.int8)
            if nin:
                slack = prob.g_in - prob.F_in @ zw
                near = np.abs(slack) <= 1e-9 * (1.0 + np.abs(prob.g_in))
                if warm_start.active is not None and warm_start.active.shape[0] == nin:
                    act0[near & (warm_start.active > 0)] = 1
                else:
                    act0[near] = 1
    if z0 is None:
        got = _feasible_point(prob)
        if got is None:
            return QpSolution("infeasible", None, None, None, np.inf, 0, None,
                              time.perf_counter() - t0)
        z0, act0 = got

    status, z, lam, mu, iters, act = _kernels.qp_core(
        prob.P, prob.q, prob.F_eq, prob.g_eq, prob.F_in, prob.g_in,
        np.ascontiguousarray(z0), np.ascontiguousarray(act0),
        _RIDGE, maxiter, tol)

    elapsed = time.perf_counter() - t0
    if not np.all(np.isfinite(z)):
        raise IllConditioned("active-set iteration produced non-finite values")
    if int(status) == _kernels.OPTIMAL:
        resid = kkt_residual(prob, z, lam, mu)
        return QpSolution("optimal", z, lam, mu, resid, int(iters), act, elapsed)
    return QpSolution("iteration_limit", z, lam, mu,
                      kkt_residual(prob, z, lam, mu), int(iters), act, elapsed)


def dump_problem(prob: QpProblem, path):
    """Plain-text standard-form dump for external cross-checking."""
    with open(path, "w", encoding="utf-8") as fh:
        def block(name, arr):
            arr = np.atleast_2d(arr)
            fh.write(f"{name} {arr.shape[0]} {arr.shape[1]}\n")
            for row in arr:
                fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")

        block("P", prob.P)
        block("q", prob.q[None, :])
        block("F_in", prob.F_in if prob.F_in.size else np.zeros((0, prob.nu)))
        block("g_in", prob.g_in[None, :] if prob.g_in.size else np.zeros((1, 0)))
        block("F_eq", prob.F_eq if prob.F_eq.size else np.zeros((0, prob.nu)))
        block("g_eq", prob.g_eq[None, :] if prob.g_eq.size else np.zeros((1, 0)))
