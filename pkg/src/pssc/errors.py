"""Exception hierarchy.

Everything raised on purpose by this package derives from :class:`PsscError`,
split into schema problems (bad user input, CLI exit code 2) and numeric
problems (construction or solve failures, CLI exit code 3).
"""


class PsscError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(PsscError):
    """A scenario document failed validation.

    Carries the full list of violations so callers can report all of them
    at once instead of stopping at the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NumericError(PsscError):
    """Base class for numerical/construction failures."""


class NoRelativeDegree(NumericError):
    """An output is decoupled from every input (c_i A^j B = 0 for all j <= n)."""


class AlphaMismatch(NumericError, ValueError):
    """Sliding coefficient list lengths disagree with the relative degrees."""


class UnstableBeta(NumericError, ValueError):
    """The convergence-rate matrix has an eigenvalue on or outside the unit circle."""


class SingularGB(NumericError):
    """G*B is singular or too ill-conditioned to invert reliably."""


class UnstableTerminalLaw(NumericError):
    """A + B*K has an eigenvalue on or outside the unit circle."""


class TrajectoryTooShort(NumericError, ValueError):
    """The reference window extends past the supplied trajectory."""


class NonBoxInputSet(NumericError, ValueError):
    """Saturation requires an axis-aligned box input set."""


class EmptyBox(NumericError, ValueError):
    """Box bounds with empty interior (lower >= upper somewhere)."""


class DimensionMismatch(NumericError, ValueError):
    """Operands live in different ambient dimensions."""


class ProjectionBlowup(NumericError):
    """Fourier-Motzkin elimination exceeded the intermediate row cap."""


class IllConditioned(NumericError):
    """A factorization failed even after the regularization shift."""


class InfeasibleTarget(NumericError):
    """No admissible steady state exists (terminal set empty)."""


class OutOfEnvelope(NumericError):
    """The surrogate plant state left its declared validity box."""


class UnboundedConstraintSet(NumericError):
    """Invariant-set computation needs a bounded augmented constraint set."""


class MinimumPhaseWarning(UserWarning):
    """A transmission zero lies on or outside the unit circle."""
