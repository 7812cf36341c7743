"""Exceptions shared across the package."""


class SizeLimitError(RuntimeError):
    """Raised when a product-space computation exceeds the configured oracle cap."""


class NumericalError(RuntimeError):
    """Raised when an iterative routine fails to converge or an internal
    numerical invariant is violated."""
