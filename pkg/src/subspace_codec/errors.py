"""Exception hierarchy shared by every module.

All domain errors derive from :class:`SubspaceCodecError`; the CLI maps them
to exit code 1.
"""

from __future__ import annotations


class SubspaceCodecError(Exception):
    """Base class for domain errors."""


class ParamViolation(SubspaceCodecError, ValueError):
    pass


class NonPrimeCharacteristic(ParamViolation):
    pass


class ReducibleModulus(ParamViolation):
    pass


class InvalidModulus(ParamViolation):
    pass


class FieldTooLarge(ParamViolation):
    pass


class NegativeRho(ParamViolation):
    pass


class FieldMismatch(SubspaceCodecError, ValueError):
    pass


class DivisionByZero(SubspaceCodecError, ZeroDivisionError):
    pass


class DimensionMismatch(SubspaceCodecError, ValueError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class AmbientMismatch(DimensionMismatch):
    pass


class SearchSpaceTooLarge(SubspaceCodecError):
    pass


class Infeasible(SubspaceCodecError):
    """No admissible (A, D, Z) was found with at most ``max_r`` error rows."""

    def __init__(self, max_r: int | None, message: str | None = None):
        self.max_r = max_r
        super().__init__(message or f"no solution with r <= {max_r}")


class CodeTooLarge(SubspaceCodecError):
    pass


class BudgetExceeded(SubspaceCodecError):
    pass


class ZeroDimCodeword(SubspaceCodecError):
    pass


class EmptyCode(SubspaceCodecError):
    pass


class FormatError(SubspaceCodecError, ValueError):
    pass
