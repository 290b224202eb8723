"""Exception hierarchy shared by every heckext module."""

from __future__ import annotations


class HeckextError(Exception):
    """Base class for all library errors."""


# gf
class NonPrime(HeckextError, ValueError):
    pass


class EvenPrimeUnsupported(HeckextError, ValueError):
    pass


class PrimeOutOfRange(HeckextError, ValueError):
    pass


class DegreeUnsupported(HeckextError, ValueError):
    pass


class ShapeMismatch(HeckextError, ValueError):
    pass


class ContextMismatch(HeckextError, ValueError):
    pass


# presalg
class UnknownGenerator(HeckextError, ValueError):
    pass


class MalformedRelation(HeckextError, ValueError):
    pass


class NotStable(HeckextError, ValueError):
    pass


class TooLarge(HeckextError, RuntimeError):
    pass


# hecke
class RangeError(HeckextError, ValueError):
    pass


class UnsupportedCentralCharacter(HeckextError, ValueError):
    pass


class InvalidCharacterData(HeckextError, ValueError):
    pass


class UnknownPiSpec(HeckextError, ValueError):
    pass


class UnknownKind(HeckextError, ValueError):
    pass


# symr
class SingularMatrix(HeckextError, ValueError):
    pass


# pgroup
class NotDiagonalizable(HeckextError, ArithmeticError):
    pass


# ledger
class ExcludedCase(HeckextError, ValueError):
    pass


class LedgerInconsistency(HeckextError, AssertionError):
    pass


# cli
class VerificationFailed(HeckextError, AssertionError):
    """A mathematical identity did not hold."""


class ExprSyntaxError(HeckextError, ValueError):
    """Parse failure in a module expression; carries the offending position."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")
