"""Exception types shared across the package."""


class ConstrainedLcsError(Exception):
    """Base class for every error raised by this package."""


class InvalidConstraintError(ConstrainedLcsError, ValueError):
    """A constraint set violates the construction rules."""


class EmptyPatternError(InvalidConstraintError):
    """A constraint pattern is empty."""


class TooManyConstraintsError(InvalidConstraintError):
    """More constraint patterns than the configured limit."""


class InstanceTooLargeError(ConstrainedLcsError, ValueError):
    """Instance exceeds the exhaustive oracle's safety guards."""


class MemoryCapExceededError(ConstrainedLcsError):
    """Estimated table footprint exceeds the configured memory cap."""


class InconsistentTableError(ConstrainedLcsError, RuntimeError):
    """Traceback reached a cell that no recurrence case explains."""
