"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Input could not be parsed into a graph or trace."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


class TheoremViolation(RuntimeError):
    """No reduction applies to a graph the theory says is reducible.

    Carries the offending graph so it can be dumped for inspection.
    """

    def __init__(self, message, graph=None):
        super().__init__(message)
        self.graph = graph
