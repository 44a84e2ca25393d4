"""Augmented tracking dynamics and the maximal invariant set.

The augmented vector w = (x, y_ref) evolves autonomously under the
terminal law through

    A_aug = [[A + B K,  B L],
             [0,        I  ]]

subject to W_aug = {w : x in X, K x + L y_ref in U}. The maximal
invariant subset T = {w : A_aug^k w in W_aug for all k >= 0} is computed
by the fixed-point iteration that intersects W_aug with successive
preimages, checking termination with one support LP per candidate row.

Because the reference block of A_aug has eigenvalue one, the iteration
may not be finitely determined; an optional contraction replaces that
block with lambda*I (lambda < 1) at the cost of a slightly smaller set.
A non-converged run is reported through the `converged` flag rather than
an exception.
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnboundedConstraintSet
from .lp import solve_lp
from .model import ConstraintSets, LtiModel, SlidingDesign
from .polytope import Polyhedron, is_bounded, minimize, project


@dataclass(frozen=True)
class TrackingInvariantSet:
    A_eq: np.ndarray
    W_eq: Polyhedron
    T: Polyhedron
    Z: Polyhedron | None
    iterations: int
    converged: bool
    lambda_used: float
    nx: int

    @property
    def possibly_non_maximal(self) -> bool:
        return not self.converged


def augment(model: LtiModel, design: SlidingDesign, sets: ConstraintSets):
    """Build (A_eq, W_eq) for the augmented (state, reference) space."""
    sets.check_model(model)
    n, m = model.n, model.m
    A_eq = np.zeros((n + m, n + m))
    A_eq[:n, :n] = model.A + model.B @ design.K
    A_eq[:n, n:] = model.B @ design.L
    A_eq[n:, n:] = np.eye(m)

    FX, gX = sets.X.F, sets.X.g
    FU, gU = sets.U.F, sets.U.g
    rows_x = np.hstack((FX, np.zeros((FX.shape[0], m))))
    rows_u = np.hstack((FU @ design.K, FU @ design.L))
    W_eq = minimize(Polyhedron(np.vstack((rows_x, rows_u)),
                               np.concatenate((gX, gU))))
    return A_eq, W_eq


def max_invariant_set(A_eq, W_eq: Polyhedron, nx: int, lambda_tighten: float = 1.0,
                      iteration_cap: int = 500, tol: float = 1e-9,
                      compute_projection: bool = True) -> TrackingInvariantSet:
    """Fixed point of Omega_{k+1} = Omega_k  ∩  {w : A_eq w in Omega_k}.

    `nx` is the width of the state block (the trailing block is the
    reference). With lambda_tighten < 1 the reference block of the map
    used in the iteration is contracted, which guarantees finite
    determination; the returned set is then an inner approximation that
    is invariant for the tightened map.
    """
    A_eq = np.asarray(A_eq, dtype=float)
    p = A_eq.shape[0]
    if W_eq.dim != p:
        raise ValueError("W_eq dimension does not match A_eq")
    if not (0.0 < lambda_tighten <= 1.0):
        raise ValueError("lambda_tighten must be in (0, 1]")
    if not is_bounded(W_eq):
        raise UnboundedConstraintSet(
            "W_eq must be bounded for the invariant-set iteration")

    Amap = np.array(A_eq)
    Amap[nx:, nx:] *= lambda_tighten

    F0, g0 = W_eq.F, W_eq.g
    Facc = np.array(F0)
    gacc = np.array(g0)

    Apow = np.array(Amap)
    converged = False
    iterations = 0
    for k in range(1, iteration_cap + 1):
        cand_F = F0 @ Apow
        # normalize candidate rows so tolerances are comparable
        norms = np.linalg.norm(cand_F, axis=1)
        keepers = norms > 1e-12
        cand_F = cand_F[keepers] / norms[keepers, None]
        cand_g = g0[keepers] / norms[keepers]

        new_F = []
        new_g = []
        for i in range(cand_F.shape[0]):
            res = solve_lp(-cand_F[i], A_ub=Facc, b_ub=gacc)
            sup = np.inf if res.status == "unbounded" else -res.objective
            if sup > cand_g[i] + tol * (1.0 + abs(cand_g[i])):
                new_F.append(cand_F[i])
                new_g.append(cand_g[i])
        if not new_F:
            converged = True
            iterations = k - 1
            break
        Facc = np.vstack((Facc, np.array(new_F)))
        gacc = np.concatenate((gacc, np.array(new_g)))
        Apow = Apow @ Amap
        iterations = k

    T = minimize(Polyhedron(Facc, gacc))
    Z = project(T, range(nx)) if compute_projection else None
    return TrackingInvariantSet(
        A_eq=np.asarray(A_eq, dtype=float), W_eq=W_eq, T=T, Z=Z,
        iterations=iterations, converged=converged,
        lambda_used=lambda_tighten, nx=nx)


def invariant_set_for(model: LtiModel, design: SlidingDesign, sets: ConstraintSets,
                      lambda_tighten: float = 1.0, iteration_cap: int = 500,
                      compute_projection: bool = True) -> TrackingInvariantSet:
    """Convenience wrapper: augment then iterate."""
    A_eq, W_eq = augment(model, design, sets)
    return max_invariant_set(A_eq, W_eq, model.n, lambda_tighten,
                             iteration_cap, compute_projection=compute_projection)
