"""Hot numeric kernels: bounded-variable simplex and primal active-set QP.

Both kernels are written against the numba-supported numpy subset so the
same source compiles under ``numba.njit`` or runs as plain numpy. The
compiled path is the default; set ``PSSC_NUMBA=0`` in the environment to
select the pure-numpy fallback (useful for debugging and as a baseline in
``benchmarks/bench_kernels.py``).

Status codes shared by both kernels:
    0 optimal, 1 infeasible, 2 unbounded, 3 iteration limit.
"""

import os

import numpy as np

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
ITER_LIMIT = 3

_BIG = 1e30


def _use_numba() -> bool:
    flag = os.environ.get("PSSC_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


# ---------------------------------------------------------------------------
# bounded-variable two-phase simplex
# ---------------------------------------------------------------------------

def _simplex_core(A, b, c, lb, ub, maxiter, tol, bland_trigger):
    """Minimize c@x subject to A x = b and lb <= x <= ub.

    Bounds may be +-inf; columns with both bounds infinite are handled as
    free variables (nonbasic at zero). Phase 1 minimizes the sum of
    artificial variables; phase 2 minimizes c. Entering variable is chosen
    by largest reduced-cost violation (Dantzig) and switches to Bland's
    least-index rule after `bland_trigger` consecutive degenerate pivots.

    Returns (status, x, y, iters, phase1_obj) where y are the row duals of
    the phase that terminated (a Farkas-type certificate when infeasible).
    """
    me, nt = A.shape
    ntot = nt + me

    # columns stored as contiguous rows of AT (structural then artificial)
    AT = np.zeros((ntot, me))
    AT[:nt, :] = A.T
    lball = np.empty(ntot)
    uball = np.empty(ntot)
    lball[:nt] = lb
    uball[:nt] = ub
    lball[nt:] = 0.0
    uball[nt:] = np.inf

    # nonbasic start for structural columns
    xval = np.zeros(ntot)
    vstat = np.zeros(ntot, np.int64)  # 0 lower, 1 upper, 2 basic, 3 free
    for j in range(nt):
        if lb[j] > -np.inf:
            vstat[j] = 0
            xval[j] = lb[j]
        elif ub[j] < np.inf:
            vstat[j] = 1
            xval[j] = ub[j]
        else:
            vstat[j] = 3
            xval[j] = 0.0

    # artificial basis absorbing the residual
    resid = b - A @ xval[:nt]
    basis = np.empty(me, np.int64)
    Binv = np.zeros((me, me))
    xB = np.empty(me)
    for i in range(me):
        s = 1.0 if resid[i] >= 0.0 else -1.0
        AT[nt + i, i] = s
        xB[i] = s * resid[i]
        vstat[nt + i] = 2
        basis[i] = nt + i
        Binv[i, i] = s

    cost = np.zeros(ntot)
    for j in range(me):
        cost[nt + j] = 1.0

    feas_tol = tol * (1.0 + np.abs(b).max()) if me > 0 else tol
    ptol = 1e-9
    phase = 1
    phase1_obj = xB.sum()
    iters = 0
    degen = 0
    bland = False
    status = ITER_LIMIT
    y = np.zeros(me)

    while iters < maxiter:
        iters += 1

        if iters % 64 == 0:
            # refactorize for numerical freshness
            Bmat = np.empty((me, me))
            for i in range(me):
                Bmat[:, i] = AT[basis[i], :]
            Binv = np.linalg.inv(Bmat)
            xnb = xval.copy()
            for i in range(me):
                xnb[basis[i]] = 0.0
            xB = Binv @ (b - xnb @ AT)

        cB = np.empty(me)
        for i in range(me):
            cB[i] = cost[basis[i]]
        y = cB @ Binv
        d = cost - AT @ y

        # pricing: violation score per nonbasic column
        viol = np.full(ntot, -np.inf)
        for j in range(ntot):
            st = vstat[j]
            if st == 0:
                viol[j] = -d[j]
            elif st == 1:
                viol[j] = d[j]
            elif st == 3:
                viol[j] = np.abs(d[j])
        if phase == 2:
            # artificials are pinned at zero, never price them back in
            for j in range(nt, ntot):
                viol[j] = -np.inf

        q = -1
        if bland:
            for j in range(ntot):
                if viol[j] > tol:
                    q = j
                    break
        else:
            jbest = int(np.argmax(viol))
            if viol[jbest] > tol:
                q = jbest

        if q < 0:
            # phase optimal
            if phase == 1:
                phase1_obj = 0.0
                for i in range(me):
                    if basis[i] >= nt:
                        phase1_obj += xB[i]
                if phase1_obj > feas_tol:
                    status = INFEASIBLE
                    break
                # drive leftover artificials out of the basis where possible
                for i in range(me):
                    if basis[i] >= nt:
                        row = AT @ Binv[i, :]
                        jpiv = -1
                        for j in range(nt):
                            if vstat[j] != 2 and np.abs(row[j]) > 1e-7:
                                jpiv = j
                                break
                        if jpiv >= 0:
                            w = Binv @ AT[jpiv, :]
                            wr = w[i]
                            Brow = Binv[i, :] / wr
                            Binv = Binv - np.outer(w, Brow)
                            Binv[i, :] = Brow
                            old = basis[i]
                            basis[i] = jpiv
                            vstat[jpiv] = 2
                            xB[i] = xval[jpiv]
                            xval[jpiv] = 0.0
                            vstat[old] = 0
                            xval[old] = 0.0
                for j in range(nt, ntot):
                    uball[j] = 0.0
                for j in range(ntot):
                    cost[j] = c[j] if j < nt else 0.0
                phase = 2
                degen = 0
                bland = False
                continue
            status = OPTIMAL
            break

        # direction of the entering variable
        delta = 1.0
        if vstat[q] == 1 or (vstat[q] == 3 and d[q] > 0.0):
            delta = -1.0
        w = Binv @ AT[q, :]
        dw = delta * w

        # ratio test: basic variables hitting a bound
        lbB = np.empty(me)
        ubB = np.empty(me)
        for i in range(me):
            lbB[i] = lball[basis[i]]
            ubB[i] = uball[basis[i]]
        theta_rows = np.full(me, _BIG)
        for i in range(me):
            if dw[i] > ptol:
                if lbB[i] > -np.inf:
                    t = (xB[i] - lbB[i]) / dw[i]
                    theta_rows[i] = t if t > 0.0 else 0.0
            elif dw[i] < -ptol:
                if ubB[i] < np.inf:
                    t = (xB[i] - ubB[i]) / dw[i]
                    theta_rows[i] = t if t > 0.0 else 0.0

        # entering variable's own range
        rng_q = uball[q] - lball[q]
        theta = rng_q if rng_q < np.inf else _BIG
        leave = -1
        if me > 0:
            if bland:
                tmin = theta_rows.min()
                leave_cand = -1
                best_col = ntot + 1
                for i in range(me):
                    if theta_rows[i] <= tmin + 1e-12 and theta_rows[i] < _BIG:
                        if basis[i] < best_col:
                            best_col = basis[i]
                            leave_cand = i
            else:
                leave_cand = -1
                tmin = _BIG
                wbest = 0.0
                for i in range(me):
                    t = theta_rows[i]
                    if t < tmin - 1e-12:
                        tmin = t
                        leave_cand = i
                        wbest = np.abs(dw[i])
                    elif t < _BIG and t <= tmin + 1e-12 and np.abs(dw[i]) > wbest:
                        leave_cand = i
                        wbest = np.abs(dw[i])
            if leave_cand >= 0 and theta_rows[leave_cand] < theta:
                theta = theta_rows[leave_cand]
                leave = leave_cand

        if theta >= 0.5 * _BIG:
            status = UNBOUNDED
            break

        if theta <= 1e-11:
            degen += 1
            if degen > bland_trigger:
                bland = True
        else:
            degen = 0
            bland = False

        xB = xB - theta * dw
        if leave < 0:
            # bound flip, no basis change
            if vstat[q] == 0:
                xval[q] = uball[q]
                vstat[q] = 1
            else:
                xval[q] = lball[q]
                vstat[q] = 0
        else:
            wr = w[leave]
            val_q = xval[q] + theta * delta
            bcol = basis[leave]
            if dw[leave] > 0.0:
                xval[bcol] = lball[bcol]
                vstat[bcol] = 0
            else:
                xval[bcol] = uball[bcol]
                vstat[bcol] = 1
            Brow = Binv[leave, :] / wr
            Binv = Binv - np.outer(w, Brow)
            Binv[leave, :] = Brow
            basis[leave] = q
            vstat[q] = 2
            xB[leave] = val_q
            xval[q] = 0.0

    xfull = xval.copy()
    for i in range(me):
        xfull[basis[i]] = xB[i]
    return status, xfull[:nt], y, iters, phase1_obj


# ---------------------------------------------------------------------------
# primal active-set QP
# ---------------------------------------------------------------------------

def _qp_core(P, q, Feq, geq, Fin, gin, z0, act0, ridge, maxiter, tol):
    """Primal active-set method for min 0.5 z'Pz + q'z.

    Subject to Feq z = geq and Fin z <= gin. `z0` must satisfy the
    equalities and inequalities to working precision; `act0` marks the
    initial working set (int8 per inequality row). P is made strictly
    convex with a `ridge` shift, and the Schur complement gets a matching
    tiny shift, so every linear solve is nonsingular by construction.

    Returns (status, z, lam, mu, iters, act) with lam the inequality
    multipliers and mu the equality multipliers.
    """
    nu = P.shape[0]
    neq = Feq.shape[0]
    nin = Fin.shape[0]

    Preg = P + ridge * np.eye(nu)
    z = z0.copy()
    act = act0.copy()
    lam = np.zeros(nin)
    mu = np.zeros(neq)

    zscale = 1.0 + np.abs(z).max() if nu > 0 else 1.0
    step_tol = tol * zscale
    mult_tol = tol

    iters = 0
    degen = 0
    bland = False
    status = ITER_LIMIT

    while iters < maxiter:
        iters += 1

        nact = int(act.sum())
        na = neq + nact
        g0 = Preg @ z + q

        Aact = np.empty((na, nu))
        gact = np.empty(na)
        idxmap = np.empty(nact, np.int64)
        for r in range(neq):
            Aact[r, :] = Feq[r, :]
            gact[r] = geq[r]
        k = neq
        for i in range(nin):
            if act[i] == 1:
                Aact[k, :] = Fin[i, :]
                gact[k] = gin[i]
                idxmap[k - neq] = i
                k += 1

        rhs = np.empty((nu, 1 + na))
        rhs[:, 0] = -g0
        for r in range(na):
            rhs[:, 1 + r] = Aact[r, :]
        sol = np.linalg.solve(Preg, rhs)
        p0 = sol[:, 0]
        if na > 0:
            V = sol[:, 1:]
            S = Aact @ V
            sshift = 1e-12 * (1.0 + np.trace(S) / na)
            for r in range(na):
                S[r, r] += sshift
            # also pull the active rows back onto their boundary
            residual = Aact @ z - gact
            lmu = np.linalg.solve(S, Aact @ p0 + residual)
            p = p0 - V @ lmu
        else:
            lmu = np.zeros(0)
            p = p0

        if np.abs(p).max() <= step_tol:
            # stationary on the working set: check multiplier signs
            jdrop = -1
            if bland:
                for r in range(nact):
                    if lmu[neq + r] < -mult_tol:
                        jdrop = r
                        break
            else:
                worst = -mult_tol
                for r in range(nact):
                    if lmu[neq + r] < worst:
                        worst = lmu[neq + r]
                        jdrop = r
            if jdrop < 0:
                for i in range(nin):
                    lam[i] = 0.0
                for r in range(nact):
                    v = lmu[neq + r]
                    lam[idxmap[r]] = v if v > 0.0 else 0.0
                for r in range(neq):
                    mu[r] = lmu[r]
                status = OPTIMAL
                break
            act[idxmap[jdrop]] = 0
            degen += 1
            if degen > 50:
                bland = True
            continue

        # ratio test over inactive inequalities
        dirs = Fin @ p
        slack = gin - Fin @ z
        alpha = 1.0
        blk = -1
        for i in range(nin):
            if act[i] == 0 and dirs[i] > 1e-12 * zscale:
                s = slack[i]
                if s < 0.0:
                    s = 0.0
                a = s / dirs[i]
                if a < alpha - 1e-14:
                    alpha = a
                    blk = i
        z = z + alpha * p
        if blk >= 0:
            act[blk] = 1
        if alpha <= 1e-12:
            degen += 1
            if degen > 50:
                bland = True
        else:
            degen = 0
            bland = False

    return status, z, lam, mu, iters, act


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

simplex_core_numpy = _simplex_core
qp_core_numpy = _qp_core

simplex_core_numba = None
qp_core_numba = None

if _use_numba():
    try:
        from numba import njit

        simplex_core_numba = njit(cache=True)(_simplex_core)
        qp_core_numba = njit(cache=True)(_qp_core)
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass

if simplex_core_numba is not None:
    simplex_core = simplex_core_numba
    qp_core = qp_core_numba
    BACKEND = "numba"
else:
    simplex_core = simplex_core_numpy
    qp_core = qp_core_numpy
    BACKEND = "numpy"


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
