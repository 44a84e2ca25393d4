"""H-representation polyhedra: {w : F w <= g}.

Rows are normalized to unit Euclidean norm at construction. Emptiness is
certified by a Chebyshev-center LP and cached on the instance. All
redundancy reasoning runs through :func:`pssc.lp.solve_lp`.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyBox, NonBoxInputSet, ProjectionBlowup
from .lp import solve_lp

CONTAIN_TOL = 1e-9
_CHEB_CAP = 1e9


@dataclass(frozen=True)
class Polyhedron:
    F: np.ndarray
    g: np.ndarray
    certified_empty: bool = False
    minimized: bool = field(default=False, compare=False)

    def __post_init__(self):
        F = np.atleast_2d(np.asarray(self.F, dtype=float))
        g = np.asarray(self.g, dtype=float).ravel()
        if F.shape[0] != g.shape[0]:
            raise ValueError("row count of F and g disagree")
        norms = np.linalg.norm(F, axis=1)
        keep = norms > 1e-12
        empty = bool(self.certified_empty)
        if not np.all(keep):
            # a zero row with negative offset certifies emptiness
            if np.any(g[~keep] < -CONTAIN_TOL):
                empty = True
            F, g, norms = F[keep], g[keep], norms[keep]
        if F.shape[0]:
            F = F / norms[:, None]
            g = g / norms
        F = np.ascontiguousarray(F)
        F.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "certified_empty", empty)

    @property
    def dim(self) -> int:
        return self.F.shape[1]

    @property
    def nrows(self) -> int:
        return self.F.shape[0]

    def __repr__(self):
        tag = " (empty)" if self.certified_empty else ""
        return f"Polyhedron({self.nrows} rows, dim {self.dim}{tag})"


def from_box(lower, upper) -> Polyhedron:
    """Axis-aligned box as 2p rows. Bounds must satisfy lower < upper."""
    lower = np.asarray(lower, dtype=float).ravel()
    upper = np.asarray(upper, dtype=float).ravel()
    if lower.shape != upper.shape:
        raise DimensionMismatch("box bound dimensions disagree")
    if np.any(lower >= upper):
        raise EmptyBox(f"degenerate box: lower {lower} not strictly below upper {upper}")
    p = lower.shape[0]
    F = np.vstack((np.eye(p), -np.eye(p)))
    g = np.concatenate((upper, -lower))
    return Polyhedron(F, g, minimized=True)


def contains(P: Polyhedron, w, tol: float = CONTAIN_TOL) -> bool:
    """Membership with an absolute tolerance on the normalized rows."""
    w = np.asarray(w, dtype=float).ravel()
    if w.shape[0] != P.dim:
        raise DimensionMismatch(f"point dim {w.shape[0]} vs polyhedron dim {P.dim}")
    if P.certified_empty:
        return False
    return bool(np.all(P.F @ w <= P.g + tol))


def contains_points(P: Polyhedron, W, tol: float = CONTAIN_TOL) -> np.ndarray:
    """Vectorized membership for an (N, p) array of points."""
    W = np.atleast_2d(np.asarray(W, dtype=float))
    if P.certified_empty:
        return np.zeros(W.shape[0], dtype=bool)
    return np.all(W @ P.F.T <= P.g + tol, axis=1)


def chebyshev_center(P: Polyhedron):
    """Largest inscribed ball: returns (center, radius).

    The radius is capped so unbounded sets still solve; a negative radius
    certifies emptiness.
    """
    p = P.dim
    r = P.nrows
    # variables (w, rho): maximize rho s.t. F w + rho <= g, rho <= cap
    A_ub = np.hstack((P.F, np.ones((r, 1))))
    A_ub = np.vstack((A_ub, np.zeros((1, p + 1))))
    A_ub[-1, -1] = 1.0
    b_ub = np.concatenate((P.g, [_CHEB_CAP]))
    c = np.zeros(p + 1)
    c[-1] = -1.0
    res = solve_lp(c, A_ub=A_ub, b_ub=b_ub)
    if not res.optimal:
        return None, -np.inf
    return res.x[:p], float(res.x[-1])


def is_empty(P: Polyhedron, tol: float = CONTAIN_TOL) -> bool:
    if P.certified_empty:
        return True
    if P.nrows == 0:
        return False
    _, rho = chebyshev_center(P)
    return rho < -tol


def minimize(P: Polyhedron, tol: float = 1e-9) -> Polyhedron:
    """Remove every redundant row; certify emptiness via LP.

    Row i is redundant iff maximizing F_i w over the remaining rows (with
    row i relaxed by one unit to keep the LP bounded) stays below g_i.
    """
    if P.certified_empty:
        return Polyhedron(P.F, P.g, certified_empty=True, minimized=True)
    if P.nrows == 0:
        return Polyhedron(np.zeros((0, P.dim)), np.zeros(0), minimized=True)
    if is_empty(P, tol):
        return Polyhedron(P.F, P.g, certified_empty=True, minimized=True)

    F, g = P.F, P.g
    # cheap pass: drop near-duplicate rows (keep the tightest offset)
    order = np.arange(F.shape[0])
    keep_mask = np.ones(F.shape[0], dtype=bool)
    for i in order:
        if not keep_mask[i]:
            continue
        same = (F[i] @ F.T > 1.0 - 1e-12) & keep_mask
        same[i] = False
        for j in np.flatnonzero(same):
            if g[j] >= g[i] - 1e-12:
                keep_mask[j] = False
    F, g = F[keep_mask], g[keep_mask]

    keep = list(range(F.shape[0]))
    i = 0
    while i < len(keep):
        ri = keep[i]
        others = [r for r in keep if r != ri]
        A = F[others]
        b = g[others].copy()
        A = np.vstack((A, F[ri]))
        b = np.concatenate((b, [g[ri] + 1.0]))
        res = solve_lp(-F[ri], A_ub=A, b_ub=b)
        if res.optimal and -res.objective <= g[ri] + tol:
            keep.pop(i)
        else:
            i += 1
    return Polyhedron(F[keep], g[keep], minimized=True)


def intersect(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """Row-stack then minimize; certifies emptiness of disjoint operands."""
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dim {P.dim} vs {Q.dim}")
    stacked = Polyhedron(np.vstack((P.F, Q.F)), np.concatenate((P.g, Q.g)),
                         certified_empty=P.certified_empty or Q.certified_empty)
    return minimize(stacked)


def contains_polyhedron(P: Polyhedron, Q: Polyhedron, tol: float = 1e-8) -> bool:
    """True iff Q is a subset of P (one support LP per row of P)."""
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dim {P.dim} vs {Q.dim}")
    if is_empty(Q):
        return True
    for i in range(P.nrows):
        res = solve_lp(-P.F[i], A_ub=Q.F, b_ub=Q.g)
        if res.status == "unbounded":
            return False
        if res.optimal and -res.objective > P.g[i] + tol:
            return False
    return True


def bounding_box(P: Polyhedron):
    """Per-coordinate (lower, upper) support values; +-inf when unbounded."""
    p = P.dim
    lo = np.full(p, -np.inf)
    hi = np.full(p, np.inf)
    for j in range(p):
        e = np.zeros(p)
        e[j] = 1.0
        res = solve_lp(e, A_ub=P.F, b_ub=P.g)
        if res.optimal:
            lo[j] = res.objective
        res = solve_lp(-e, A_ub=P.F, b_ub=P.g)
        if res.optimal:
            hi[j] = -res.objective
    return lo, hi


def is_bounded(P: Polyhedron) -> bool:
    lo, hi = bounding_box(P)
    return bool(np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)))


def box_bounds(P: Polyhedron):
    """Interpret P as an axis-aligned box, returning (lower, upper).

    Raises NonBoxInputSet when any row involves more than one coordinate.
    Missing sides come back infinite.
    """
    p = P.dim
    lower = np.full(p, -np.inf)
    upper = np.full(p, np.inf)
    for i in range(P.nrows):
        row = P.F[i]
        nz = np.flatnonzero(np.abs(row) > 1e-12)
        if nz.shape[0] != 1:
            raise NonBoxInputSet("input set is not an axis-aligned box")
        j = nz[0]
        coef = row[j]
        if coef > 0:
            upper[j] = min(upper[j], P.g[i] / coef)
        else:
            lower[j] = max(lower[j], P.g[i] / coef)
    return lower, upper


def project(P: Polyhedron, keep, row_cap: int = 20000) -> Polyhedron:
    """Orthogonal projection onto the `keep` coordinates.

    Fourier-Motzkin elimination of the dropped coordinates, removing
    redundant rows after each elimination. `keep` must be a nonempty,
    strictly increasing selection; the projected set lives in the kept
    coordinates in their original order.
    """
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must be nonempty")
    if keep[0] < 0 or keep[-1] >= P.dim:
        raise DimensionMismatch("keep indices outside ambient dimension")
    if P.certified_empty:
        return Polyhedron(np.zeros((0, len(keep))), np.zeros(0), certified_empty=True)

    drop = [j for j in range(P.dim) if j not in keep]
    F = np.array(P.F)
    g = np.array(P.g)
    cols = list(range(P.dim))

    while drop:
        # eliminate the column with minimal positive*negative row product
        best_j, best_cost = None, None
        for j in drop:
            cj = cols.index(j)
            pos = int(np.sum(F[:, cj] > 1e-12))
            neg = int(np.sum(F[:, cj] < -1e-12))
            cost = pos * neg + (pos + neg)
            if best_cost is None or cost < best_cost:
                best_cost, best_j = cost, j
        cj = cols.index(best_j)
        col = F[:, cj]
        pos = np.flatnonzero(col > 1e-12)
        neg = np.flatnonzero(col < -1e-12)
        zer = np.flatnonzero(np.abs(col) <= 1e-12)

        n_new = len(zer) + len(pos) * len(neg)
        if n_new > row_cap:
            raise ProjectionBlowup(
                f"elimination would create {n_new} rows (cap {row_cap})")

        rows = [np.delete(F[zer], cj, axis=1)]
        offs = [g[zer]]
        for ip in pos:
            # combine with every negative row so the coefficient cancels
            wp = F[ip] / col[ip]
            gp = g[ip] / col[ip]
            wn = F[neg] / (-col[neg])[:, None]
            gn = g[neg] / (-col[neg])
            comb = wp[None, :] + wn
            rows.append(np.delete(comb, cj, axis=1))
            offs.append(gp + gn)
        F = np.vstack(rows) if rows else np.zeros((0, len(cols) - 1))
        g = np.concatenate(offs) if offs else np.zeros(0)
        cols.pop(cj)
        drop.remove(best_j)

        reduced = minimize(Polyhedron(F, g))
        if reduced.certified_empty:
            return Polyhedron(np.zeros((0, len(keep))), np.zeros(0), certified_empty=True)
        F, g = np.array(reduced.F), np.array(reduced.g)

    # reorder columns to match the kept coordinates in ascending order
    perm = [cols.index(k) for k in keep]
    return Polyhedron(F[:, perm], g, minimized=True)


def sample(P: Polyhedron, n: int, rng, burn: int = 30):
    """Hit-and-run samples from a full-dimensional polyhedron.

    Approximate uniform coverage is enough for the certification tests;
    the walk starts at the Chebyshev center and is deterministic given
    `rng`.
    """
    center, rho = chebyshev_center(P)
    if center is None or rho < 0:
        raise ValueError("cannot sample from an empty polyhedron")
    p = P.dim
    x = np.array(center)
    out = np.empty((n, p))
    produced = 0
    it = 0
    max_tries = (burn + n) * 50
    while produced < n and it < max_tries:
        it += 1
        d = rng.standard_normal(p)
        d /= np.linalg.norm(d)
        Fd = P.F @ d
        slackv = P.g - P.F @ x
        tlo, thi = -np.inf, np.inf
        for i in range(P.nrows):
            if Fd[i] > 1e-12:
                thi = min(thi, slackv[i] / Fd[i])
            elif Fd[i] < -1e-12:
                tlo = max(tlo, slackv[i] / Fd[i])
        if not np.isfinite(tlo) or not np.isfinite(thi) or thi < tlo:
            continue
        x = x + d * rng.uniform(tlo, thi)
        if it > burn:
            out[produced] = x
            produced += 1
    if produced < n:
        raise ValueError("hit-and-run failed to produce samples (degenerate set?)")
    return out


def to_text(P: Polyhedron) -> str:
    """One row per line: coefficients then offset, whitespace-separated."""
    lines = []
    for i in range(P.nrows):
        parts = [f"{v:.17g}" for v in P.F[i]] + [f"{P.g[i]:.17g}"]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def from_text(text: str) -> Polyhedron:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([float(v) for v in line.split()])
    if not rows:
        raise ValueError("no rows in polyhedron text")
    arr = np.asarray(rows, dtype=float)
    return Polyhedron(arr[:, :-1], arr[:, -1])
