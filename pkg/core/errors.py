"""Exceptions raised across the package."""


class MoebiusLociError(Exception):
    """Base class for every error raised by this package."""


class InvalidMap(MoebiusLociError):
    """Coefficients do not describe an element of PSL(2,R)."""


class AmbiguousClass(MoebiusLociError):
    """|tr| falls inside the tolerance band around 2 in strict mode."""

    def __init__(self, trace, tol):
        super().__init__(f'|tr| = {abs(trace)!r} is within {tol} of 2')
        self.trace = trace
        self.tol = tol


class DegenerateArc(MoebiusLociError):
    """An arc's angular length underflowed."""


class EmptyInput(MoebiusLociError):
    """An operation that needs at least one point received none."""


class BudgetExceeded(MoebiusLociError):
    """A search would exceed its node budget.

    ``partial`` carries the best result found before stopping, if any.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionFailed(MoebiusLociError):
    """One or more stated hypotheses of an operation do not hold."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__('; '.join(self.violations))


class CommonFixedPoint(MoebiusLociError):
    """Two maps share a fixed point where the definition excludes it."""


class TupleParseError(MoebiusLociError):
    """A tuple file could not be parsed."""

    def __init__(self, source, line, reason):
        super().__init__(f'{source}:{line}: {reason}')
        self.source = source
        self.line = line
        self.reason = reason


class UnknownScenario(MoebiusLociError):
    """The requested reproduction scenario does not exist."""
