"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A search or rewriting loop ran out of its step/vertex budget."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantViolation(AssertionError):
    """A computed object failed re-verification."""
