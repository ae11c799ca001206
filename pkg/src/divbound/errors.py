"""Exception hierarchy shared by every module of the package."""


class DivergenceError(ValueError):
    """Base class for all input and evaluation errors raised by divbound."""


class NonFinite(DivergenceError):
    """A probability vector contains NaN or an infinity."""


class TooShort(DivergenceError):
    """A probability vector has fewer than two entries."""


class NonPositiveEntry(DivergenceError):
    """A probability vector contains an entry that is zero or negative."""


class SumMismatch(DivergenceError):
    """A probability vector does not sum to one within tolerance."""


class LengthMismatch(DivergenceError):
    """Two distributions that must be compared have different lengths."""


class BadDimension(DivergenceError):
    """A sampler was asked for a simplex of dimension below two."""


class InvalidRange(DivergenceError):
    """A ratio range violates ``0 < r <= 1 <= R < inf``."""


class NonFiniteResult(DivergenceError, ArithmeticError):
    """A divergence evaluated to NaN or overflowed to an infinity."""


class UnsupportedRegime(DivergenceError):
    """The extrema of a weight function are not available for this (s, range)."""
