"""Exception types raised by knotgraph."""


class GraphValidationError(ValueError):
    """A graph violates one of the structural invariants.

    ``invariant`` is a short machine-readable name of the violated rule.
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class GraphSyntaxError(ValueError):
    def __init__(self, line, column, message):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnsupportedBackboneError(ValueError):
    pass


class NotContractibleError(ValueError):
    pass


class GradingError(ValueError):
    pass


class BasisIncompleteError(RuntimeError):
    pass


class ResourceGuardError(RuntimeError):
    pass


class NontrivialityError(AssertionError):
    pass
