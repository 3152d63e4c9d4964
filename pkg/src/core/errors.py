"""Exception types raised by the TraceRing core."""

from typing import Optional


class TraceRingError(Exception):
    """Base class for every error raised by the core modules."""


class ParseError(TraceRingError, ValueError):
    """Malformed word, polynomial, representation or presentation text.

    Args:
        message: Human-readable description of the problem
        text: The text being parsed
        position: 0-based character offset where parsing failed
    """

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(TraceRingError, ValueError):
    """An operation was called with arguments outside its domain."""


class LetterSetMismatch(PreconditionError):
    """Permutations or group-algebra elements on different letter sets were combined."""


class NonInvertibleMatrix(PreconditionError):
    """An inverse letter was evaluated on a singular matrix."""


class ResourceLimitExceeded(TraceRingError, RuntimeError):
    """A Groebner basis computation ran past its reduction-step budget."""

    def __init__(self, steps: int, budget: int):
        self.steps = steps
        self.budget = budget
        super().__init__(f"Reduction budget exhausted after {steps} steps (budget {budget})")


class ComputationCancelled(TraceRingError, RuntimeError):
    """A long-running computation observed its cancellation token."""
