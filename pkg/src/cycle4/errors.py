"""Exception hierarchy for the cycle4 library.

Everything raised on purpose derives from Cycle4Error so callers can catch
library failures without masking programming errors.
"""


class Cycle4Error(Exception):
    """Base class for all cycle4 errors."""


class DomainError(Cycle4Error, ValueError):
    """An argument lies outside the operation's mathematical domain."""


class SolverError(Cycle4Error, RuntimeError):
    """The polynomial solver produced a root with an unacceptable residual."""


class NotAnEigenvalue(Cycle4Error, ValueError):
    """The eigenvector recursion does not close: lambda is not in the spectrum."""


class RegimeError(Cycle4Error, ValueError):
    """A tight-regime operation was invoked on an unbounded-regime frame."""


class NotOnCurve(Cycle4Error, ValueError):
    """The point is not on the left boundary curve within the band tolerance."""


class NotStrictInterior(Cycle4Error, ValueError):
    """The point fails the strict-interior preconditions of the IVT solver."""


class ConvergenceError(Cycle4Error, RuntimeError):
    """Bisection exhausted its budget or lost its sign bracket."""


class VerificationError(Cycle4Error, RuntimeError):
    """A constructed solution failed its independent eigenvalue check."""


class SamplerExhausted(Cycle4Error, RuntimeError):
    """A rejection sampler failed its consecutive-rejection budget."""


class OutsideRegion(Cycle4Error, ValueError):
    """Realization was requested for a point outside the admissible region.

    Carries the classification verdict so callers can report which
    constraints were violated.
    """

    def __init__(self, verdict, message=None):
        self.verdict = verdict
        names = [c.value for c in verdict.violated]
        super().__init__(message or f"point not realizable: kind={verdict.kind.value}, violated={names}")
