"""Exception hierarchy shared by every layer of the package."""

__all__ = [
    "SuperBMSError",
    "SectorMismatch",
    "KindMismatch",
    "MissingSqrtLambda",
    "SqrtMismatch",
    "InconsistentOracle",
    "TransportConditionFailed",
    "AlphaNonzero",
    "ParseError",
    "UnknownVariable",
]


class SuperBMSError(Exception):
    """Base class for domain errors raised by this package."""


class SectorMismatch(SuperBMSError, ValueError):
    """Operands belong to different sectors (Ramond vs Neveu-Schwarz)."""


class KindMismatch(SuperBMSError, ValueError):
    """A vector is used with a module of the other kind."""


class MissingSqrtLambda(SuperBMSError, ValueError):
    """A half-integer power of lambda was needed but no square root was supplied."""


class SqrtMismatch(SuperBMSError, ValueError):
    """The supplied square root does not square to lambda."""


class InconsistentOracle(SuperBMSError, ValueError):
    """Sampled action values do not have the shape of any module in the family."""


class TransportConditionFailed(SuperBMSError, ValueError):
    """The transported polynomial violates the family condition at index ``m``."""

    def __init__(self, m: int, message: str | None = None):
        self.m = m
        super().__init__(message or f"transport condition fails at m={m}")


class AlphaNonzero(SuperBMSError, ValueError):
    """The probe only makes sense for alpha == 0."""


class ParseError(SuperBMSError, ValueError):
    """Malformed text input; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int = 0, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnknownVariable(ParseError):
    """A variable name that is not valid for the requested vector kind."""
