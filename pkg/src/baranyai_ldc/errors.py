class ValidationError(ValueError):
    """Input violates a structural precondition."""


class DivisibilityError(ValidationError):
    pass


class CapacityError(Exception):
    """Requested object is larger than this library will materialize."""


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
