"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(ValueError):
    """Argument outside the documented support range of an implementation."""


class InvalidModeError(ValueError):
    """Requested Mathieu mode does not exist (e.g. the odd function of order 0)."""


class SearchExhaustedError(RuntimeError):
    """A root bracket could not be found within the scan bound.

    The ``diagnostics`` attribute carries the scan history.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConditioningError(ArithmeticError):
    """Evaluation requested at a point where the formula is singular."""


class ConditioningWarning(UserWarning):
    """Evaluation close to a coordinate singularity; accuracy may degrade."""


class ShapeError(ValueError):
    """Sampled fields or grids do not match."""


class SpecError(ValueError):
    """Inconsistent domain descriptions (e.g. mixed eccentricities)."""
