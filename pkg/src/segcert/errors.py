"""Exception hierarchy shared by every module."""


class SegcertError(Exception):
    """Base class for all errors raised by segcert."""


class DomainError(SegcertError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ParseError(SegcertError, ValueError):
    """A literal or configuration document could not be parsed."""


class ValidationError(SegcertError, ValueError):
    """A problem, segment or configuration violates a structural invariant.

    ``key`` names the offending field when one can be identified.
    """

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key
