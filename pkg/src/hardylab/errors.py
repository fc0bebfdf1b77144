"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Input violates a documented precondition of an operation."""


class ConvergenceError(DomainError):
    """A numerical procedure failed to stabilize.

    Carries the best estimate obtained before giving up, so callers can
    report a best-effort value.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
