"""Exception types shared across the package."""


class AlgebraError(Exception):
    pass


class NonPrime(AlgebraError, ValueError):
    pass


class ReducibleModulus(AlgebraError, ValueError):
    pass


class UnsupportedSize(AlgebraError, ValueError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class DescriptorMismatch(AlgebraError, ValueError):
    pass


class WrongCharacteristic(AlgebraError, ValueError):
    pass


class UnknownVariable(AlgebraError, KeyError):
    pass


class NotUnivariate(AlgebraError, ValueError):
    pass


class ParseError(AlgebraError, ValueError):
    pass
