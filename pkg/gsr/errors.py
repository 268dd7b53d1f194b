"""
Error types for the GSR engine.

Every failure the engine can report carries an ErrorCode so that the CLI
and callers can branch on the code instead of the message text.
"""

from enum import Enum
from typing import Any, Optional


class ErrorCode(Enum):
    """Error identifiers reported by the engine."""
    MALFORMED_TABLE = "MALFORMED_TABLE"
    BAD_BOUNDS = "BAD_BOUNDS"
    GAMMA_NOT_CLOSED = "GAMMA_NOT_CLOSED"
    CAP_EXCEEDED = "CAP_EXCEEDED"
    NOT_CLOSED = "NOT_CLOSED"
    EMPTY_OPERAND = "EMPTY_OPERAND"
    OWNER_MISMATCH = "OWNER_MISMATCH"
    LENGTH_TOO_SHORT = "LENGTH_TOO_SHORT"
    NOT_SUB_GSR = "NOT_SUB_GSR"
    NOT_GEN_BI = "NOT_GEN_BI"
    EQUIVALENCE_BROKEN = "EQUIVALENCE_BROKEN"
    KIND_NOT_SATISFIED = "KIND_NOT_SATISFIED"
    UNKNOWN_STATEMENT = "UNKNOWN_STATEMENT"
    IO_ERROR = "IO_ERROR"
    AXIOM_VIOLATION = "AXIOM_VIOLATION"
    CONFIG_ERROR = "CONFIG_ERROR"


class GsrError(Exception):
    """Base class for all engine errors."""

    code: ErrorCode = ErrorCode.MALFORMED_TABLE

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        return f"{self.code.value}: {self.message}"


class MalformedTableError(GsrError, ValueError):
    """Table shape or index range is invalid."""
    code = ErrorCode.MALFORMED_TABLE


class BadBoundsError(GsrError, ValueError):
    """Builder parameters are out of range."""
    code = ErrorCode.BAD_BOUNDS


class GammaNotClosedError(GsrError, ValueError):
    """Requested Gamma residues are not closed under addition."""
    code = ErrorCode.GAMMA_NOT_CLOSED


class CapExceededError(GsrError, ValueError):
    """A configured size cap would be exceeded."""
    code = ErrorCode.CAP_EXCEEDED


class NotClosedError(GsrError, ValueError):
    """A subset is not closed under addition or the Gamma-product."""
    code = ErrorCode.NOT_CLOSED


class EmptyOperandError(GsrError, ValueError):
    """A set operation received an empty operand."""
    code = ErrorCode.EMPTY_OPERAND


class OwnerMismatchError(GsrError, ValueError):
    """Set operands are bound to different instances."""
    code = ErrorCode.OWNER_MISMATCH


class LengthTooShortError(GsrError, ValueError):
    """A chain product needs at least two factors."""
    code = ErrorCode.LENGTH_TOO_SHORT


class NotSubSemiringError(GsrError, ValueError):
    """A subset expected to be a sub-Gamma-semiring is not one."""
    code = ErrorCode.NOT_SUB_GSR


class NotGenBiError(GsrError, ValueError):
    """A subset expected to be a generalized bi-Gamma-ideal is not one."""
    code = ErrorCode.NOT_GEN_BI


class EquivalenceBrokenError(GsrError, RuntimeError):
    """The three GB-simplicity criteria disagree. Always an implementation bug."""
    code = ErrorCode.EQUIVALENCE_BROKEN


class KindNotSatisfiedError(GsrError, ValueError):
    """A subset does not satisfy the ideal kind it was given with."""
    code = ErrorCode.KIND_NOT_SATISFIED


class UnknownStatementError(GsrError, LookupError):
    """A statement id is not in the registry."""
    code = ErrorCode.UNKNOWN_STATEMENT


class InstanceIOError(GsrError):
    """An instance or report file could not be read or written."""
    code = ErrorCode.IO_ERROR


class AxiomViolationError(GsrError, ValueError):
    """Tables are well formed but violate one or more axioms."""
    code = ErrorCode.AXIOM_VIOLATION

    def __init__(self, message: str, violations: list[Any]):
        super().__init__(message, witness=violations)
        self.violations = violations


class ConfigError(GsrError, ValueError):
    """Configuration file is unreadable or invalid."""
    code = ErrorCode.CONFIG_ERROR
