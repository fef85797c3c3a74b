"""Exception types shared across the package."""


class MatrigidError(Exception):
    """Base class for all errors raised by matrigid."""


class NonPrimeModulus(MatrigidError, ValueError):
    pass


class NoIrreducibleFound(MatrigidError, RuntimeError):
    pass


class DimensionMismatch(MatrigidError, ValueError):
    pass


class FieldMismatch(MatrigidError, ValueError):
    pass


class FieldTooSmall(MatrigidError, ValueError):
    pass


class VertexOutOfRange(MatrigidError, ValueError):
    pass


class GroundSetTooLarge(MatrigidError, ValueError):
    pass


class IntegerSlope(MatrigidError, ValueError):
    pass


class BadSlope(MatrigidError, ValueError):
    pass


class BadDimensions(MatrigidError, ValueError):
    pass


class BadArguments(MatrigidError, ValueError):
    pass


class LoopPresent(MatrigidError, ValueError):
    pass


class EpsOutOfRange(MatrigidError, ValueError):
    pass


class PartsInvalid(MatrigidError, ValueError):
    pass


class NonIntegralResult(MatrigidError, ArithmeticError):
    pass


class TooLarge(MatrigidError, ValueError):
    pass


class BadMu(MatrigidError, ValueError):
    pass


class CharacteristicTwoQuadratic(MatrigidError, ValueError):
    pass


class UnsupportedField(MatrigidError, NotImplementedError):
    pass
