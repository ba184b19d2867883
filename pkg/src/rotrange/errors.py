"""Exception hierarchy shared by all rotrange modules."""


class RotRangeError(Exception):
    """Base class for every error raised by rotrange."""


class DimensionMismatch(RotRangeError, ValueError):
    pass


class NotHermitian(RotRangeError, ValueError):
    pass


class NoConvergence(RotRangeError, ArithmeticError):
    pass


class RealvaluednessViolated(RotRangeError, ValueError):
    pass


class ZeroPolynomial(RotRangeError, ValueError):
    pass


class SingularMatrix(RotRangeError, ValueError):
    pass


class DimensionTooSmall(RotRangeError, ValueError):
    pass


class UnsupportedDimension(RotRangeError, ValueError):
    pass


class NotCertified(RotRangeError, ValueError):
    pass


class InconsistentCurvature(RotRangeError, ArithmeticError):
    pass


class OriginOutside(RotRangeError, ValueError):
    pass


class InvalidSpec(RotRangeError, ValueError):
    pass


class OutOfDomain(RotRangeError, ValueError):
    pass


class MatrixFileError(RotRangeError, ValueError):
    """Malformed matrix file (bad JSON, shape or non-finite entries)."""
