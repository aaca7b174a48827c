"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """An operation would exceed the configured sieve memory budget."""


class ScaleError(ValueError):
    """A prime is too large for the requested scale x."""
