"""Exception types shared across the toolkit."""


class GraphError(ValueError):
    """Invalid graph construction or unknown vertex."""


class FormatError(ValueError):
    """Malformed text input (graph files, formulas, k-expressions, witnesses)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class VocabularyError(ValueError):
    """Formula mixes adj/arc, or does not fit the model kind."""


class UnboundVariableError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A configured resource budget ran out before the computation finished."""


class PreconditionError(ValueError):
    pass
