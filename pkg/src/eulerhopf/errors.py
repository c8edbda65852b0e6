class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ExpressionSyntaxError(DomainError):
    """A word expression could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
