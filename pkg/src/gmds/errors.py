"""Exception types shared across the toolkit."""


class GmdsError(Exception):
    """Base class for all toolkit errors."""


class InputError(GmdsError, ValueError):
    """Invalid argument or malformed user input."""


class GraphParseError(InputError):
    """Raised when an instance file cannot be parsed.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class SizeLimitError(GmdsError):
    """An exact computation was refused because the instance is too large."""


class InsufficientDataError(GmdsError):
    """Not enough usable data points to produce an estimate."""
