"""Exception types shared across the package."""


class TDRingsError(Exception):
    pass


class InvalidInput(TDRingsError, ValueError):
    pass


class CharPolyMismatch(InvalidInput):
    """The matrix does not have characteristic polynomial (x-a_1)...(x-a_n)."""


class StabilityError(InvalidInput):
    """A lattice is not closed under multiplication by (a_1, ..., a_n)."""


class BudgetExceeded(TDRingsError):
    """An enumeration would exceed the configured resource budget."""

    def __init__(self, needed, budget):
        super().__init__(f"enumeration of {needed} matrices exceeds budget {budget}")
        self.needed = needed
        self.budget = budget
