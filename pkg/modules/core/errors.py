# modules/core/errors.py

"""Exception hierarchy shared by every leibniz_lab module."""


class LeibnizLabError(Exception):
    """Base class for all errors raised by leibniz_lab."""


class DimensionMismatchError(LeibnizLabError, ValueError):
    """Vectors, tensors or indices disagree on dimension."""


class SingularBasisChangeError(LeibnizLabError, ValueError):
    """A basis change (or a family transform) is not invertible."""


class NotAnIdealError(LeibnizLabError, ValueError):
    """A subspace is not a two-sided ideal, or does not have the required annihilation."""


class NotNilpotentError(LeibnizLabError, ValueError):
    """An operation that needs a nilpotent algebra got one that is not."""


class TruncationOverflowError(LeibnizLabError, ArithmeticError):
    """A Fock product leaves the degree window of the truncated polynomial space."""


class ParameterError(LeibnizLabError, ValueError):
    """Invalid sizes, index ranges or scalar strings."""


class SchemaError(LeibnizLabError, ValueError):
    """A JSON document does not follow the interchange format."""
