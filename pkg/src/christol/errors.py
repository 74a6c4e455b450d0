"""Exception hierarchy shared by every stage of the pipeline."""


class ChristolError(Exception):
    """Base class for all errors raised by this package."""


# field construction / arithmetic
class NotPrime(ChristolError, ValueError):
    pass


class ReducibleModulus(ChristolError, ValueError):
    pass


class DegreeMismatch(ChristolError, ValueError):
    pass


class DivisionByZero(ChristolError, ZeroDivisionError):
    pass


class FieldMismatch(ChristolError, ValueError):
    pass


# polynomials
class BothConstantInY(ChristolError, ValueError):
    pass


class NotDivisible(ChristolError, ValueError):
    pass


class PolynomialSyntaxError(ChristolError, ValueError):
    pass


# series
class AmbiguousContinuation(ChristolError):
    pass


class NoContinuation(ChristolError):
    pass


class PrecisionExhausted(ChristolError):
    pass


class NonUnitDenominator(ChristolError, ValueError):
    pass


# preparation
class NotSeparable(ChristolError):
    pass


class DegreeZero(ChristolError):
    pass


class InvalidPrefix(ChristolError, ValueError):
    pass


class PrefixMismatch(ChristolError, ValueError):
    pass


class InvariantBreach(ChristolError):
    """An internal invariant failed; always indicates a bug, never bad input."""


class SmoothnessCheckFailed(InvariantBreach):
    pass


class StateExplosion(InvariantBreach):
    pass


# cartier
class DigitOutOfRange(ChristolError, ValueError):
    pass
