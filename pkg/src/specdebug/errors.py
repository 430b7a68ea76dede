"""Exception hierarchy shared by all modules."""


class SpecDebugError(Exception):
    """Base class for every error raised by this package."""


class FormulaSyntaxError(SpecDebugError, ValueError):
    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class IntervalError(SpecDebugError, ValueError):
    """Malformed interval: negative bound, lower > upper, empty or singular."""


class NotNNFError(SpecDebugError, ValueError):
    pass


class OccurrenceError(SpecDebugError, ValueError):
    """A literal-occurrence path does not resolve to a literal."""


class DecompositionError(SpecDebugError, ValueError):
    pass


class EngineError(SpecDebugError, ValueError):
    """The satisfiability engine cannot handle the query (alignment, open
    intervals, horizon cap, unabstracted predicates, mixed fragment...)."""


class TraceError(SpecDebugError, ValueError):
    pass


class MonitorError(SpecDebugError, ValueError):
    pass


class PreconditionError(SpecDebugError, ValueError):
    pass


class ProfileError(SpecDebugError, ValueError):
    pass
