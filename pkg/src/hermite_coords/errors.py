"""Exception types raised across the package."""


class HermiteCoordsError(Exception):
    """Base class for all package errors."""


class DegreeOverflowError(HermiteCoordsError, ValueError):
    pass


class InvalidVarianceError(HermiteCoordsError, ValueError):
    pass


class DegenerateScaleError(HermiteCoordsError, ValueError):
    pass


class UnsupportedDegreeError(HermiteCoordsError, ValueError):
    pass


class NonPositiveDensityError(HermiteCoordsError, ValueError):
    """A perturbed density takes negative values on the checked grid."""


class PerturbationTooLargeError(NonPositiveDensityError):
    """Raised by the numeric oracles when eps/delta break positivity."""


class NoRootError(HermiteCoordsError, ValueError):
    pass


class IndeterminatePointError(HermiteCoordsError, ValueError):
    pass


class QuadratureError(HermiteCoordsError, ArithmeticError):
    pass
