"""Exception hierarchy shared by every module and mapped to CLI exit codes."""

from __future__ import annotations


class LargenessError(Exception):
    """Base class; the CLI maps all subclasses to exit code 3."""


class StructuralError(LargenessError):
    """Malformed input: non-square table, out-of-range index, bad JSON shape."""


class UsageError(LargenessError):
    """Operation called with arguments that violate its preconditions."""


class UnsupportedOperation(UsageError):
    """Requested a universal check over a structure where it is not finitely checkable."""


class CostGuardExceeded(UsageError):
    """Enumeration size is above the configured guard and no override was given."""


class WindowOverflow(LargenessError):
    """A sum left a NatWindow; carries the location that overflowed."""

    def __init__(self, message: str, location: object = None):
        super().__init__(message)
        self.location = location
