"""Exception hierarchy shared by the library and the command line."""


class CheeseError(Exception):
    """Base class for all library errors."""


class InvalidInputError(CheeseError, ValueError):
    """Malformed or non-finite data."""


class PreconditionError(CheeseError, ValueError):
    """An operation was called outside its domain."""


class HypothesisError(PreconditionError):
    """The radius margin delta is not strictly positive."""


class CompositionError(CheeseError):
    """Two allocation maps do not share their middle cheese."""


class QuadratureError(CheeseError):
    """Contour quadrature would be unreliable (pole or point too close to a circle)."""
