"""Exception hierarchy.

Two families map onto CLI exit codes: ``ValidationError`` (bad input, exit 1)
and ``NumericalError`` (a computation that cannot be carried out, exit 2).
"""


class YangianError(Exception):
    pass


class ValidationError(YangianError, ValueError):
    pass


class NumericalError(YangianError, ArithmeticError):
    pass


class DimensionMismatch(ValidationError):
    pass


class WrongShape(ValidationError):
    pass


class DegenerateParams(ValidationError):
    pass


class ConstraintViolated(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotDensity(ValidationError):
    pass


class EmptyRange(ValidationError):
    pass


class SingularMatrix(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass
