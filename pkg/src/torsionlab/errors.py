"""Exception types shared across the package."""


class TorsionLabError(Exception):
    """Base class for every error raised on purpose by this package."""


class UnsupportedField(TorsionLabError, ValueError):
    pass


class MixedFields(TorsionLabError, TypeError):
    pass


class DivisionByZero(TorsionLabError, ZeroDivisionError):
    pass


class NotInField(TorsionLabError, ValueError):
    """A value (square root, root of a polynomial) does not live in the field asked for."""


class ParseError(TorsionLabError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SingularCurve(TorsionLabError, ValueError):
    pass


class NotOnCurve(TorsionLabError, ValueError):
    pass


class BadReduction(TorsionLabError, ValueError):
    pass


class NoGoodPrime(TorsionLabError, RuntimeError):
    pass


class PrecisionExhausted(TorsionLabError, RuntimeError):
    pass


class NotTorsion(TorsionLabError, ValueError):
    pass


class ConsistencyFailure(TorsionLabError, AssertionError):
    """An internal cross-check disagreed. Never swallowed."""


class NotAnEmbedding(TorsionLabError, ValueError):
    pass


class NotInSet(TorsionLabError, ValueError):
    """A twisting parameter that is a square in the base field."""


SquareTwistParameter = NotInSet


class NonIntegralInput(TorsionLabError, ValueError):
    pass


class UnsupportedGroup(TorsionLabError, ValueError):
    pass


class DegenerateParameter(TorsionLabError, ValueError):
    pass


class InvalidDivisor(TorsionLabError, ValueError):
    pass


class RowMismatch(TorsionLabError, AssertionError):
    pass


class UnknownCurve(TorsionLabError, KeyError):
    pass


class NonRegularPoint(TorsionLabError, ValueError):
    pass


class RecordMismatch(TorsionLabError, AssertionError):
    pass


class ZeroPolynomial(TorsionLabError, ValueError):
    pass


class PointNotOnModel(NotOnCurve):
    pass
