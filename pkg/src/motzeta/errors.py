"""Error types shared by every module.

Each error carries a stable ``code`` that the command line prints as
``ERROR <CODE>: message``.
"""


class MotzetaError(Exception):
    code = "ERROR"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message


class InvalidArgument(MotzetaError, ValueError):
    code = "INVALID_ARGUMENT"


class ParseError(MotzetaError, ValueError):
    code = "PARSE_ERROR"


class NonCoprime(MotzetaError, ValueError):
    code = "NON_COPRIME"


class InexactDivision(MotzetaError, ArithmeticError):
    code = "INEXACT_DIVISION"


class NonUnit(MotzetaError, ArithmeticError):
    code = "NON_UNIT"


class SymbolicCoefficients(MotzetaError, ValueError):
    code = "SYMBOLIC_COEFFICIENTS"


class NotFound(MotzetaError):
    code = "NOT_FOUND"


class BudgetExceeded(MotzetaError):
    code = "BUDGET_EXCEEDED"


class NonIntegral(MotzetaError, ArithmeticError):
    code = "NON_INTEGRAL"


class InsufficientCensus(MotzetaError, ValueError):
    code = "INSUFFICIENT_CENSUS"


class UnboundSymbol(MotzetaError, KeyError):
    code = "UNBOUND_SYMBOL"

    def __str__(self):
        return self.message


class InvalidIndex(MotzetaError, ValueError):
    code = "INVALID_INDEX"


class NotInvariant(MotzetaError, ValueError):
    code = "NOT_INVARIANT"


class NoDecomposition(MotzetaError, RuntimeError):
    code = "NO_DECOMPOSITION"


class DimensionMismatch(MotzetaError, ValueError):
    code = "DIMENSION_MISMATCH"


class InvalidField(MotzetaError, ValueError):
    code = "INVALID_FIELD"
