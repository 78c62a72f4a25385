"""Exception types shared across the package."""


class FieldMismatch(ValueError):
    """Operands belong to different fields or incompatible contexts."""


class PrecisionError(ArithmeticError):
    """A computation cannot be completed at the available precision.

    ``needed_extra`` is a lower bound on how many additional digits of
    working precision would let the computation proceed.
    """

    def __init__(self, message, needed_extra=1):
        super().__init__(message)
        self.needed_extra = needed_extra


class BudgetError(RuntimeError):
    """A configured search or size budget was exceeded."""


class NotEisenstein(ValueError):
    """Polynomial fails the Eisenstein criterion; carries the bad index."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class CheckFailure(AssertionError):
    """A theorem-level verification failed; carries the witness report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
