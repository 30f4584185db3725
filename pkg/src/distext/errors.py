class PreconditionError(ValueError):
    """An operation was called on input outside its domain of definition."""


class ConstructionAnomaly(RuntimeError):
    """A construction that is mathematically guaranteed to succeed did not."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record or {}
