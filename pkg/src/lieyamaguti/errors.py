"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    pass


class MalformedInput(ValueError):
    """Input data violates a structural invariant (skew symmetry, index range, ...)."""


class AxiomFailure(ValueError):
    """A precondition that requires a valid structure was not met."""

    def __init__(self, message: str, reports=()):
        super().__init__(message)
        self.reports = list(reports)


class JacobiViolation(AxiomFailure):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


class FormatError(ValueError):
    """A file could not be parsed; carries a position when one is known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
