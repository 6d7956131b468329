"""Exceptions raised by lsemStability.

Every error is either a :class:`ValidationError` (the caller handed us
something we cannot work with) or a :class:`NumericalError` (the inputs
were fine but the arithmetic broke down). The command line maps the first
to exit code 2 and the second to exit code 3.
"""


class ValidationError(ValueError):
    pass


class NumericalError(ArithmeticError):
    pass


class InvalidSize(ValidationError):
    pass


class InvalidGraph(ValidationError):
    pass


class CycleDetected(ValidationError):
    def __init__(self, message, remaining=None):
        super().__init__(message)
        self.remaining = remaining or []


class ShapeMismatch(ValidationError):
    pass


class NotUnitTriangular(ValidationError):
    pass


class NotAPath(ValidationError):
    pass


class NotBowFree(ValidationError):
    pass


class EmptyBatch(ValidationError):
    pass


class AllZeroReference(ValidationError):
    pass


class BoundInapplicable(ValidationError):
    pass


class InputFileError(ValidationError):
    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class NearSingularSystem(NumericalError):
    """A pivot (or recurrence denominator) fell below the relative threshold.

  ``node`` is the 0-based vertex whose column was being recovered, when
  known; ``pivot`` is the offending relative pivot magnitude."""

    def __init__(self, message, node=None, pivot=None):
        super().__init__(message)
        self.node = node
        self.pivot = pivot


class NonPsdOmega(NumericalError):
    pass


class BaselineRecoveryFailed(NumericalError):
    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class DegenerateDraw(NumericalError):
    pass
