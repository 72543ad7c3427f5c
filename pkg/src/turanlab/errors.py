"""Shared exception types, mapped to CLI exit codes in turanlab.cli."""


class CapExceededError(Exception):
    """A hard size cap was exceeded; the operation refuses rather than degrade."""


class InvariantViolationError(Exception):
    """A structural invariant that should hold by construction failed."""
