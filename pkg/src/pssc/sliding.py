"""Sliding values and the unconstrained second-order DSMC law."""

import numpy as np

from .model import LtiModel, SlidingDesign
from .polytope import Polyhedron, box_bounds


def sliding_value(design: SlidingDesign, x, href) -> np.ndarray:
    """First-order sliding value s = G x - H(k)."""
    return design.G @ np.asarray(x, dtype=float).ravel() - np.asarray(href, dtype=float).ravel()


def second_order_value(design: SlidingDesign, s_next, s_now) -> np.ndarray:
    """Second-order sliding value xi = s(k+1) + beta s(k)."""
    return np.asarray(s_next, dtype=float).ravel() + design.beta @ np.asarray(s_now, dtype=float).ravel()


def dsmc_control(design: SlidingDesign, model: LtiModel, x, href_now, href_next) -> np.ndarray:
    """Equivalent control of the second-order DSMC.

    Solves xi(k) = 0 for u(k), which needs the reference windows H(k) and
    H(k+1). For a constant reference this reduces to K x + L y_ref.
    """
    x = np.asarray(x, dtype=float).ravel()
    href_now = np.asarray(href_now, dtype=float).ravel()
    href_next = np.asarray(href_next, dtype=float).ravel()
    GB = design.G @ model.B
    rhs = (design.G @ model.A + design.beta @ design.G) @ x
    rhs -= href_next + design.beta @ href_now
    return -np.linalg.solve(GB, rhs)


def saturate(u, U: Polyhedron) -> np.ndarray:
    """Componentwise clipping to an axis-aligned input box."""
    lower, upper = box_bounds(U)
    return np.clip(np.asarray(u, dtype=float).ravel(), lower, upper)
