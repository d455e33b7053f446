"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OrderingError(DomainError):
    """Interval endpoints were passed in the wrong order (no silent swap)."""


class RegistryError(ValueError):
    """The requested family has no entry in the duality registry."""


class ConvergenceError(RuntimeError):
    """Adaptive integration hit its subdivision limit.

    Carries the best estimate so far in ``best`` (a ``QuadResult``).
    """

    def __init__(self, message, best):
        super().__init__(message)
        self.best = best
