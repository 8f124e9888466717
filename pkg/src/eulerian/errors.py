"""Exception types shared across the package."""


class EulerianError(Exception):
    """Base class for all errors raised by this package."""


class SizeMismatchError(EulerianError, ValueError):
    """Operands belong to different groups, ranks or coefficient rings."""


class CapacityError(EulerianError):
    """A computation would exceed one of the enumeration guardrails."""


class InconsistentPosetError(EulerianError, ValueError):
    """The transitive closure of a relation set is not antisymmetric."""

    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"relations force a cycle through {pair[0]} and {pair[1]}")


class InvalidCaseError(EulerianError, ValueError):
    """An index or zig-zag descent set outside the valid range."""


class UnsupportedKindError(EulerianError, ValueError):
    """The requested operation has no definition for this structure kind."""


class InvariantViolation(EulerianError, AssertionError):
    """An internal consistency check failed."""
