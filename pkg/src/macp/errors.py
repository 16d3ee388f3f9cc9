"""Shared exception types."""


class CapacityError(RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""
