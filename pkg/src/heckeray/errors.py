"""Error taxonomy shared by all modules.

Each error class carries a stable CLI exit code; the mapping is 1:1 so
that shell callers can dispatch on the kind without parsing messages.
"""


class HeckerayError(Exception):
    exit_code = 1


class ParseError(HeckerayError):
    exit_code = 2


class DivisionByZero(HeckerayError):
    exit_code = 3


class InvalidDegree(HeckerayError):
    exit_code = 4


class NotIrrational(HeckerayError):
    exit_code = 5


class UnsupportedCharacteristic(HeckerayError):
    exit_code = 6


class PrecisionExhausted(HeckerayError):
    exit_code = 7


class DomainError(HeckerayError):
    exit_code = 8


class NotRealQuadratic(HeckerayError):
    exit_code = 9


class PeriodNotFound(HeckerayError):
    exit_code = 10


class NoEmbedding(HeckerayError):
    exit_code = 11


class NotLoxodromic(HeckerayError):
    exit_code = 12


class PeriodSearchExhausted(HeckerayError):
    exit_code = 13


class BudgetExceeded(HeckerayError):
    exit_code = 14


class OutOfRange(HeckerayError):
    exit_code = 15


class NotInGammaInfty(HeckerayError):
    exit_code = 16


ERROR_KINDS = {
    cls.__name__: cls.exit_code
    for cls in [
        ParseError, DivisionByZero, InvalidDegree, NotIrrational,
        UnsupportedCharacteristic, PrecisionExhausted, DomainError,
        NotRealQuadratic, PeriodNotFound, NoEmbedding, NotLoxodromic,
        PeriodSearchExhausted, BudgetExceeded, OutOfRange, NotInGammaInfty,
    ]
}
