class ExtremalError(ValueError):
    """Invalid family key or an empty candidate set."""


class EnumerationBudgetError(ExtremalError):
    def __init__(self, message, estimate):
        self.estimate = estimate
        super().__init__(message)
