class InvalidInputError(ValueError):
    """Raised when an argument violates a shape, range or structural requirement."""


class PreconditionError(ValueError):
    """Raised when a quantity the caller asked for is undefined for the given data.

    The offending value (typically a non-positive denominator) is kept on
    ``value`` so callers can report it.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value
