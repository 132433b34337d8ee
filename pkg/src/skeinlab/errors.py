"""Exception hierarchy shared by every module.

The CLI maps ``ValidationError`` to exit code 1 and ``ComputationError``
to exit code 2.
"""


class SkeinlabError(Exception):
    """Base class for all library errors."""


class ValidationError(SkeinlabError, ValueError):
    """Malformed or inadmissible input."""


class ComputationError(SkeinlabError, ArithmeticError):
    """A well-formed input whose evaluation failed."""


class DivisionByZero(ComputationError, ZeroDivisionError):
    pass


class PoleError(ComputationError):
    """Evaluation at a point where a denominator vanishes."""


class BoundExhausted(ComputationError):
    """Coloring enumeration reached its cap: the shadow is probably not collapsible."""

    def __init__(self, message, region=None):
        super().__init__(message)
        self.region = region


class PhaseError(ComputationError):
    """A product of framing phases left an unresolved fourth root of unity or half power of A."""


class CapExceeded(ComputationError):
    """A configured size cap (states, colors, arity) was exceeded."""
