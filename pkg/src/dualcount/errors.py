"""Shared exception types."""


class NotCoveredError(Exception):
    """Raised when a (group, target) combination is outside the supported scope.

    The CLI maps this to exit code 3.
    """
