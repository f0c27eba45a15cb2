"""Exception hierarchy shared by every module.

Each class maps to one CLI exit code.
"""


class DeckReconError(Exception):
    exit_code = 1


class InvariantViolation(DeckReconError):
    """A proven bound or identity failed; indicates a bug, not bad input."""

    exit_code = 1


class InputError(DeckReconError, ValueError):
    exit_code = 2


class ParseError(InputError):
    pass


class UnsupportedSizeError(InputError):
    pass


class RegimeError(DeckReconError):
    """Raised when an algorithm cannot produce any value for the given parameters."""

    exit_code = 3
