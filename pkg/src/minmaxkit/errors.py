"""Exception types shared by the solvers."""


class ValidationError(ValueError):
    """Input does not satisfy an operation's preconditions."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its configured size budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: requires {required} items, budget is {budget}")
