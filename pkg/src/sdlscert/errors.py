"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """A numerical routine failed to meet its tolerance.

    Keyword arguments are attached as attributes so callers can salvage
    partial results (best iterate, residuals, iteration counts).
    """

    def __init__(self, message, **partial):
        super().__init__(message)
        for key, value in partial.items():
            setattr(self, key, value)


class DivergenceError(RuntimeError):
    """An iteration left its divergence guard.  Carries the trace so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
