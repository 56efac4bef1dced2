"""Exception types shared across the package."""


class HypercleanError(Exception):
    """Base class for all errors raised by this package."""


class WrongArityError(HypercleanError):
    """An edge does not contain exactly `uniformity` vertices."""


class DuplicateVertexInEdgeError(HypercleanError):
    """An edge lists the same vertex more than once."""


class VertexOutOfRangeError(HypercleanError):
    """A vertex index falls outside [0, n)."""


class EmptyVertexSetError(HypercleanError):
    """The operation is undefined on a hypergraph with no vertices."""


class LengthMismatchError(HypercleanError):
    """A per-vertex sequence does not have one entry per vertex."""


class NotIndependentError(HypercleanError):
    """The given vertex set contains a full edge."""


class InstanceTooLargeError(HypercleanError):
    """The instance exceeds the cap of an exact (exponential) oracle."""


class InadmissibleEtaError(HypercleanError):
    """An eta override violates the strict admissibility bound."""


class MissingDelegateError(HypercleanError):
    """The run stopped in the max-degree case but no delegate was supplied."""


class DomainError(HypercleanError, ValueError):
    """A numeric argument is outside the domain of a formula."""


class GenerationBudgetExceededError(HypercleanError):
    """Sample-and-repair generation ran out of retries."""


class VerificationFailureError(HypercleanError):
    """A transcript failed re-verification.

    The offending step index (or None for the final inequality) is
    available as ``step``.
    """

    def __init__(self, message: str, step=None):
        super().__init__(message)
        self.step = step


class ParseError(HypercleanError, ValueError):
    """A text input could not be parsed; ``line`` is 1-based."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
