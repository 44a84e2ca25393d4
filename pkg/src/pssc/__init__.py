"""Predictive second-order sliding control for constrained linear systems.

Library layout:

- :mod:`pssc.model`      LTI models, relative degrees, sliding-design gains
- :mod:`pssc.sliding`    sliding values and the unconstrained DSMC law
- :mod:`pssc.polytope`   H-representation polyhedra and projections
- :mod:`pssc.invariant`  augmented tracking dynamics and the invariant set
- :mod:`pssc.lp`         dense simplex linear programming
- :mod:`pssc.qp`         dense active-set quadratic programming
- :mod:`pssc.builder`    receding-horizon QP assembly
- :mod:`pssc.controller` the predictive controller and the DSMC baseline
- :mod:`pssc.estimation` discrete Kalman filter
- :mod:`pssc.rcci`       RCCI-engine-like surrogate plant (synthetic model)
- :mod:`pssc.simulate`   closed-loop simulation engine and trace metrics
- :mod:`pssc.scenario`   scenario file schema
- :mod:`pssc.cli`        command-line interface
"""

from .model import LtiModel, ConstraintSets, SlidingDesign, build_sliding_design, relative_degree, reference_window
from .polytope import Polyhedron, from_box, intersect, minimize, contains, project
from .invariant import TrackingInvariantSet, augment, max_invariant_set
from .qp import QpProblem, QpSolution, solve_qp
from .builder import build_pssc_problem
from .controller import PsscConfig, PsscController, PsscStepResult, DsmcController, closest_admissible_setpoint
from .estimation import KalmanFilter
from .simulate import SimTrace, simulate, trace_metrics

__version__ = "0.1.0"

__all__ = [
    "LtiModel", "ConstraintSets", "SlidingDesign", "build_sliding_design",
    "relative_degree", "reference_window",
    "Polyhedron", "from_box", "intersect", "minimize", "contains", "project",
    "TrackingInvariantSet", "augment", "max_invariant_set",
    "QpProblem", "QpSolution", "solve_qp", "build_pssc_problem",
    "PsscConfig", "PsscController", "PsscStepResult", "DsmcController",
    "closest_admissible_setpoint", "KalmanFilter",
    "SimTrace", "simulate", "trace_metrics",
    "__version__",
]
