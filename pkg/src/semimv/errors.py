"""Exception types shared by the library and the command line front end."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DomainError(ValueError):
    """Input is well formed but fails a mathematical property check.

    ``face`` optionally carries the offending face.
    """

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class CheckFailed(AssertionError):
    """Two independent computation routes disagreed."""
