class LoopflagError(ValueError):
    """Raised when an input violates a documented precondition."""


class ResourceLimitError(LoopflagError):
    """Raised when a requested enumeration exceeds the configured caps."""
