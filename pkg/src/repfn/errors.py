"""Exception types shared across the package."""


class RepfnError(Exception):
    """Base class for all errors raised by this package."""


class SetSpecError(RepfnError, ValueError):
    """A set-spec string is malformed or describes an invalid set."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class EmptySetError(RepfnError, ValueError):
    """An operation that needs a member was given an empty set."""


class ScanBoundExceeded(RepfnError, RuntimeError):
    """A bounded scan ended without an answer; the bound is recorded."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (scan bound {bound})")
        self.bound = bound


class IncompletePrefixError(RepfnError, ValueError):
    """A complement prefix does not cover the range an operation needs."""


class InsufficientComplementError(RepfnError, RuntimeError):
    """Too few complement elements were found to resolve a decrease case.

    This does not mean the set has no decrease; it means the descriptor
    and scan bound cannot certify one.
    """


class BudgetExceededError(RepfnError, RuntimeError):
    """A computation would exceed the configured resource budget."""

    def __init__(self, message: str, budget: int):
        super().__init__(f"{message} (budget {budget} bytes)")
        self.budget = budget


class SelfCheckError(RepfnError, RuntimeError):
    """An internal consistency check failed.

    Raised when a result that is supposed to be impossible shows up, for
    example a guaranteed flat step that cannot be found.  Never silenced.
    """
