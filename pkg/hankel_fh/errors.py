"""Exception types raised across the package, plus the CLI exit-code mapping."""

from __future__ import annotations

from typing import Optional


class HankelFHError(Exception):
    """Base class for every error raised by hankel_fh."""


# --------------------------------------------------------------------------- #
# Validation errors (exit code 1)
# --------------------------------------------------------------------------- #


class InvalidInputError(HankelFHError, ValueError):
    pass


class DomainError(InvalidInputError):
    pass


class InvalidSpecError(InvalidInputError):
    pass


class InvalidPotentialError(InvalidSpecError):
    pass


class SpecParseError(InvalidInputError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class EquilibriumError(HankelFHError):
    pass


class NotRegularError(EquilibriumError):
    pass


class SupportNotNormalizedError(EquilibriumError):
    pass


# --------------------------------------------------------------------------- #
# Numerical failures (exit code 2)
# --------------------------------------------------------------------------- #


class SpecialFunctionError(HankelFHError, ArithmeticError):
    pass


class PoleError(SpecialFunctionError):
    pass


class LogZeroError(SpecialFunctionError):
    pass


class NumericalFailure(HankelFHError, ArithmeticError):
    pass


class DeterminantUnderflowError(NumericalFailure):
    def __init__(self, message: str, pivot_decay: float) -> None:
        super().__init__(f"{message} (pivot_decay={pivot_decay:.6g})")
        self.pivot_decay = pivot_decay


EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (InvalidInputError, EquilibriumError)):
        return EXIT_VALIDATION
    if isinstance(exc, ValueError) and not isinstance(exc, ArithmeticError):
        return EXIT_VALIDATION
    return EXIT_NUMERICAL
