"""Workbench error hierarchy.

Report-valued checks never raise for a mathematical failure; these exceptions
signal refusals, malformed input and failed post-hoc verification.
"""
from typing import Optional


class WorkbenchError(Exception):
    """Base class for every error raised by the workbench."""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is not None:
            return f"{self.message} (witness: {self.witness})"
        return self.message


# ── Linear algebra ───────────────────────────────────────────────

class DimensionMismatchError(WorkbenchError):
    pass


class FieldMismatchError(WorkbenchError):
    pass


# ── Coalgebra structure ──────────────────────────────────────────

class InvalidCoalgebraError(WorkbenchError):
    pass


class InvalidMorphismError(WorkbenchError):
    pass


class NotCoidealError(WorkbenchError):
    pass


class GradingError(WorkbenchError):
    pass


# ── Coradical and pointedness ────────────────────────────────────

class UnsupportedCharacteristicError(WorkbenchError):
    pass


class NotPointedError(WorkbenchError):
    pass


class NotSplitError(NotPointedError):
    """Pointed only over an extension field."""


# ── Simply colored structure ─────────────────────────────────────

class InvalidRetractionError(WorkbenchError):
    pass


class NotConilpotentError(WorkbenchError):
    pass


# ── Convolution ──────────────────────────────────────────────────

class NotInvertibleError(WorkbenchError):
    def __init__(self, message: str, color: Optional[str] = None):
        super().__init__(message, witness=color)
        self.color = color


class NotAGroupError(WorkbenchError):
    def __init__(self, message: str, axiom: str, witness: Optional[str] = None):
        super().__init__(message, witness=witness)
        self.axiom = axiom


# ── Search caps ──────────────────────────────────────────────────

class SearchLimitError(WorkbenchError):
    """Exhaustive solve refused: the instance exceeds a configured cap."""


# ── Internal consistency ─────────────────────────────────────────

class VerificationError(WorkbenchError):
    """An exact post-hoc check failed. Always an implementation bug."""


# ── Definition files ─────────────────────────────────────────────

class DefinitionError(WorkbenchError):
    def __init__(self, reason: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {reason}")
        self.reason = reason
        self.line = line
        self.column = column
