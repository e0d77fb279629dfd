"""Exception types raised by the numeric pipeline."""


class DaubZerosError(Exception):
    """Base class for all library errors."""


class PrecisionError(DaubZerosError):
    """Working precision too low for the requested evaluation."""


class EvaluationError(DaubZerosError):
    """A special-function evaluation scheme failed to converge."""


class SingularityError(DaubZerosError):
    """Argument at or too close to a singular point of a map or function."""


class DomainError(DaubZerosError):
    """Argument outside the validity region of an expansion or map."""


class RefinementError(DaubZerosError):
    """Newton refinement diverged, escaped its region, or hit the iteration cap.

    Carries the last iterate so callers can diagnose the failure.
    """

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class StructuralError(DaubZerosError):
    """A zero set or coefficient vector violates its structural invariants."""


class FactorizationError(DaubZerosError):
    """Spectral factorization is ill-conditioned (a z-zero too close to |z|=1)."""
