"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or ill-typed input (bad endpoints, non-surjective maps, ...)."""


class BudgetExceeded(RuntimeError):
    """A separating-conjunction enumeration would exceed the configured budget."""

    def __init__(self, size: int, budget: int):
        super().__init__(f"{size} atoms exceed the enumeration budget of {budget}")
        self.size = size
        self.budget = budget


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
