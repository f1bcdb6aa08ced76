"""Exception taxonomy shared by every module."""


class HeavyCoverError(Exception):
    """Base class for all library errors."""


class DimensionError(HeavyCoverError):
    """Inputs of mismatched or unsupported dimension."""


class DomainError(HeavyCoverError):
    """Argument outside an operation's domain (bad counts, bad ranges)."""


class DegeneracyError(HeavyCoverError):
    """Input violates a general-position precondition."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else []


class ParseError(HeavyCoverError):
    """Malformed or inexact dataset input."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class GenerationError(HeavyCoverError):
    """Seeded generator exhausted its retry budget."""


class UnsupportedError(HeavyCoverError):
    """Requested output is not supported for this input (e.g. non-planar plot)."""


class InternalError(HeavyCoverError):
    """An internal invariant failed; indicates a bug, not a data condition."""
