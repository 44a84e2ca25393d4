"""Discrete LTI models and the sliding-surface design.

The sliding design turns per-output error windows

    s_i(k) = sum_j alpha_{i,j} e_i(k+j),   j = 0..d_i-1

into the matrix form s(k) = G x(k) - H(k), and derives the terminal
state-feedback law u = K x + L y_ref that keeps the second-order sliding
variable xi(k) = s(k+1) + beta s(k) at zero for a constant reference.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (AlphaMismatch, MinimumPhaseWarning, NoRelativeDegree,
                     SingularGB, UnstableBeta, UnstableTerminalLaw)
from .polytope import Polyhedron, is_bounded, contains

_REL_DEG_TOL = 1e-9
_GB_COND_MAX = 1e12


def _frozen_array(a, shape=None) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if shape is not None:
        arr = arr.reshape(shape)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LtiModel:
    """Square discrete-time system x(k+1) = A x(k) + B u(k), y = C x."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        B = np.asarray(self.B, dtype=float)
        C = np.asarray(self.C, dtype=float)
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("A must be square")
        B = B.reshape(n, -1)
        C = C.reshape(-1, n)
        m = B.shape[1]
        if C.shape[0] != m:
            raise ValueError(
                f"plant must be square: {m} inputs vs {C.shape[0]} outputs")
        if m < 1 or n < m:
            raise ValueError("need 1 <= m <= n")
        object.__setattr__(self, "A", _frozen_array(A))
        object.__setattr__(self, "B", _frozen_array(B))
        object.__setattr__(self, "C", _frozen_array(C))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True)
class ConstraintSets:
    """State and input constraint polyhedra; bounded with 0 interior."""

    X: Polyhedron
    U: Polyhedron

    def __post_init__(self):
        for name, P in (("X", self.X), ("U", self.U)):
            if not contains(P, np.zeros(P.dim)):
                raise ValueError(f"{name} must contain the origin")
            if not is_bounded(P):
                raise ValueError(f"{name} must be bounded")

    def check_model(self, model: LtiModel):
        if self.X.dim != model.n or self.U.dim != model.m:
            raise ValueError("constraint sets do not match model dimensions")


def relative_degree(model: LtiModel, output: int, tol: float = _REL_DEG_TOL) -> int:
    """Smallest d >= 1 with c_i A^(d-1) B nonzero (0-based output index).

    The zero test is scale-aware: a row counts as zero when its max-abs
    entry stays below tol * max(1, |c_i A^j| * |B|).
    """
    n, m = model.n, model.m
    if not 0 <= output < m:
        raise IndexError(f"output index {output} outside 0..{m - 1}")
    row = model.C[output].copy()
    Bnorm = np.abs(model.B).max()
    for d in range(1, n + 2):
        scale = max(1.0, np.abs(row).max() * Bnorm)
        if np.abs(row @ model.B).max() > tol * scale:
            return d
        row = row @ model.A
    raise NoRelativeDegree(f"output {output} is decoupled from all inputs")


@dataclass(frozen=True)
class SlidingDesign:
    """Sliding gains derived from a model and per-output coefficients.

    Fields: relative degrees `d`, window lengths `l` (= d-1), coefficient
    lists `alpha`, convergence matrix `beta`, sliding gain `G`, diagonal
    reference gain `Htilde`, terminal gains `K` and `L`.
    """

    model: LtiModel
    d: tuple
    l: tuple
    alpha: tuple
    beta: np.ndarray
    G: np.ndarray
    Htilde: np.ndarray
    K: np.ndarray
    L: np.ndarray

    @property
    def m(self) -> int:
        return self.model.m

    @property
    def GB(self) -> np.ndarray:
        return self.G @ self.model.B

    @property
    def max_window(self) -> int:
        return max(self.l)


def _transmission_zeros(model: LtiModel) -> np.ndarray:
    """Invariant zeros via the generalized eigenproblem on the system pencil."""
    n, m = model.n, model.m
    M = np.block([[model.A, model.B], [model.C, np.zeros((m, m))]])
    N = np.zeros_like(M)
    N[:n, :n] = np.eye(n)
    vals = scipy.linalg.eig(M, N, right=False)
    return vals[np.isfinite(vals)]


def build_sliding_design(model: LtiModel, alpha, beta) -> SlidingDesign:
    """Construct G, Htilde, K, L and validate every design invariant.

    alpha is one coefficient list per output with length equal to that
    output's relative degree and a nonzero last entry; beta must have all
    eigenvalues strictly inside the unit circle.
    """
    n, m = model.n, model.m
    beta = np.atleast_2d(np.asarray(beta, dtype=float))
    if beta.shape != (m, m):
        raise ValueError(f"beta must be {m}x{m}")
    if np.abs(np.linalg.eigvals(beta)).max() >= 1.0 - 1e-12:
        raise UnstableBeta("beta has an eigenvalue on or outside the unit circle")
    if len(alpha) != m:
        raise AlphaMismatch(f"need {m} coefficient lists, got {len(alpha)}")

    d = tuple(relative_degree(model, i) for i in range(m))
    alph = []
    for i, coeffs in enumerate(alpha):
        coeffs = np.asarray(coeffs, dtype=float).ravel()
        if coeffs.shape[0] != d[i]:
            raise AlphaMismatch(
                f"output {i}: {coeffs.shape[0]} coefficients but relative degree {d[i]}")
        if abs(coeffs[-1]) <= 1e-12 * max(1.0, np.abs(coeffs).max()):
            raise AlphaMismatch(f"output {i}: leading window coefficient is zero")
        alph.append(_frozen_array(coeffs))

    G = np.zeros((m, n))
    for i in range(m):
        Apow = np.eye(n)
        acc = np.zeros((n, n))
        for a in alph[i]:
            acc += a * Apow
            Apow = Apow @ model.A
        G[i] = model.C[i] @ acc

    GB = G @ model.B
    if np.linalg.cond(GB) > _GB_COND_MAX:
        raise SingularGB(
            f"G*B condition number {np.linalg.cond(GB):.3e} exceeds {_GB_COND_MAX:.0e}")

    Htilde = np.diag([float(a.sum()) for a in alph])
    K = -np.linalg.solve(GB, G @ model.A + beta @ G)
    L = np.linalg.solve(GB, (np.eye(m) + beta) @ Htilde)

    cl = np.abs(np.linalg.eigvals(model.A + model.B @ K)).max()
    if cl >= 1.0 - 1e-9:
        raise UnstableTerminalLaw(
            f"A + B K spectral radius {cl:.6f} is not strictly inside the unit circle")

    zeros = _transmission_zeros(model)
    bad = zeros[np.abs(zeros) >= 1.0 - 1e-9]
    if bad.size:
        warnings.warn(
            f"transmission zeros on/outside the unit circle: {bad}",
            MinimumPhaseWarning, stacklevel=2)

    return SlidingDesign(
        model=model, d=d, l=tuple(di - 1 for di in d), alpha=tuple(alph),
        beta=_frozen_array(beta), G=_frozen_array(G),
        Htilde=_frozen_array(Htilde), K=_frozen_array(K), L=_frozen_array(L))


def reference_window(design: SlidingDesign, y_d, k: int) -> np.ndarray:
    """H(k): per-output weighted window of the reference trajectory.

    `y_d` is a (T, m) trajectory (or (T,) for single-output models); the
    window for output i spans k..k+l_i. The trajectory must cover the
    window; callers extend by holding the last value, this function does
    not extrapolate.
    """
    from .errors import TrajectoryTooShort

    y_d = np.asarray(y_d, dtype=float)
    if y_d.ndim == 1:
        y_d = y_d[:, None]
    m = design.m
    if y_d.shape[1] != m:
        raise ValueError(f"trajectory has {y_d.shape[1]} outputs, design has {m}")
    if k < 0 or k + design.max_window >= y_d.shape[0]:
        raise TrajectoryTooShort(
            f"window needs steps {k}..{k + design.max_window}, trajectory has "
            f"{y_d.shape[0]}")
    h = np.empty(m)
    for i in range(m):
        li = design.l[i]
        h[i] = design.alpha[i] @ y_d[k:k + li + 1, i]
    return h
