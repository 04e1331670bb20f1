"""Exception types shared across the package."""


class AsdimlabError(Exception):
    """Base class for all package errors."""


class InvalidInputError(AsdimlabError, ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(AsdimlabError, RuntimeError):
    """A construction or computation would exceed a configured cap."""


class MetricError(AsdimlabError, ValueError):
    """A claimed metric violates symmetry, identity or the triangle inequality."""


class SpaceMismatchError(AsdimlabError, ValueError):
    """A cover or map references a different space than the one supplied."""


class HullCoverageError(AsdimlabError, ValueError):
    """The target space is not contained in the N-hull of the mapped image."""


class BudgetExhaustedError(AsdimlabError, RuntimeError):
    """An exact search ran out of its node budget before reaching a verdict."""
