"""Exception hierarchy shared by the engines and the CLI."""

from typing import Any, Dict, Optional

from utils.constants import EXIT_BAD_FLAGS, EXIT_GOLDEN_MISMATCH, EXIT_SIZE_CAP


class KostantError(Exception):
    """Base error; carries the CLI exit code and structured context."""

    exit_code: int = 1

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{key}={value}" for key, value in self.context.items())
        return f"{self.message} ({details})"


class DiagramError(KostantError):
    """Malformed or unsupported marked Dynkin diagram."""

    exit_code = EXIT_BAD_FLAGS


class DimensionError(KostantError):
    """Vectors from different root systems were combined."""

    exit_code = EXIT_BAD_FLAGS


class WeightError(KostantError):
    """Weight is not dominant for the requested Levi subsystem."""

    exit_code = EXIT_BAD_FLAGS


class FormatError(KostantError):
    """Unknown output format."""

    exit_code = EXIT_BAD_FLAGS


class PosetTooLargeError(KostantError):
    """A quotient exceeds the configured element cap."""

    exit_code = EXIT_SIZE_CAP


class GroupTooLargeError(KostantError):
    """The full Weyl group is too large for ordinary KL polynomials."""

    exit_code = EXIT_SIZE_CAP


class GoldenMismatchError(KostantError):
    """A recomputed table differs from the shipped golden data."""

    exit_code = EXIT_GOLDEN_MISMATCH

    def __init__(self, message: str, expected: Any = None, actual: Any = None, **context: Any):
        super().__init__(message, expected=expected, actual=actual, **context)
        self.expected = expected
        self.actual = actual


class IntervalError(KostantError):
    """Requested interval is empty or not graded."""


class ConventionError(KostantError):
    """A KL convention produced values no valid convention can produce."""


class ConfigurationError(KostantError):
    """Configured data failed a runtime postcondition."""

    exit_code = EXIT_BAD_FLAGS


class SignAssignmentError(KostantError):
    """No sign assignment satisfies the square condition."""


class CacheMismatchError(KostantError):
    """A cached payload differs from a fresh recomputation."""


def exit_code_for(error: Optional[BaseException]) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(error, KostantError):
        return error.exit_code
    return 1
