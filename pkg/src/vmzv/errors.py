"""Exception types raised by the library.

Every error that reaches the CLI as a "math-level" failure derives from
:class:`MathError`; the CLI maps it to exit status 1.
"""


class MathError(Exception):
    """Base class for mathematical failures (precision, divergence, ...)."""


class PrecisionError(MathError):
    """A computation could not reach the requested precision."""

    def __init__(self, msg, achieved=None):
        super().__init__(msg)
        self.achieved = achieved


class ConvergenceError(MathError):
    """A series does not converge at the requested point."""


class MembershipError(MathError):
    """A point expected inside the open unit polydisk is not there."""


class CostGuardError(MathError):
    """A brute-force computation exceeds the configured budget."""


class ZeroValuationError(MathError):
    """The valuation of a value known only to be small was requested."""
