"""Exception types raised by rspace."""


class InvalidArgument(ValueError):
    """Malformed or out-of-contract input."""


class Unsupported(ValueError):
    """Input is valid in general but outside what an operation handles."""


class DegeneracyError(ArithmeticError):
    """A numerical construction produced a degenerate (empty) object."""


class MeetUndefined(DegeneracyError):
    """Componentwise kernel intersection has a zero component."""


class SearchExhausted(DegeneracyError):
    """A constructive search ran out of candidates without validating."""
