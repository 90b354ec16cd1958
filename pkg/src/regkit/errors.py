"""Exception types shared across the toolkit."""


class RegkitError(Exception):
    """Base class for all toolkit errors."""


class DegenerateInput(RegkitError):
    """An input is empty or otherwise outside the domain of a definition."""


class NotDisjoint(RegkitError):
    """Edge sets expected to be disjoint share an edge."""


class ClassMismatch(RegkitError):
    """Vertex classes of two structures do not match."""


class ClassSizeMismatch(RegkitError):
    """Classes that must have equal sizes do not."""


class GroundMismatch(RegkitError):
    """Two partitions do not share the same ground set."""


class ParameterOutOfContract(RegkitError):
    """A numeric parameter violates a hard contract (e.g. beta > 1/2)."""


class PreconditionFailed(RegkitError):
    """A stated precondition of an operation does not hold."""


class FrameMismatch(RegkitError):
    """A partition does not refine the 3-partite frame it is used with."""


class BudgetExceeded(RegkitError):
    """An exhaustive search was requested beyond its size budget."""


class UnknownSuite(RegkitError):
    """A verification suite id is not registered."""


class FormatError(RegkitError):
    """A file does not conform to its line-oriented format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
