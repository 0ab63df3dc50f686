"""Exception hierarchy shared by every stage of the engine"""
from typing import List, Optional


class EngineError(Exception):
    """Base class for all engine errors"""


class ValidationError(EngineError):
    """User input rejected (exit status 1)"""

    def __init__(self, message: str, clauses: Optional[List[str]] = None, field: Optional[str] = None):
        super().__init__(message)
        self.clauses = list(clauses or [])
        self.field = field

    def __str__(self):
        text = super().__str__()
        if self.field:
            text = f"{self.field}: {text}"
        if self.clauses:
            text += " [" + "; ".join(self.clauses) + "]"
        return text


class InvariantViolation(EngineError):
    """Engine defect: a structural identity did not hold (exit status 2)"""

    def __init__(self, message: str, residual: Optional[str] = None):
        super().__init__(message)
        self.residual = residual


class GuardExhausted(EngineError):
    """Resolution driver exceeded its step guard (exit status 3)"""

    def __init__(self, message: str, chart_id: Optional[str] = None):
        super().__init__(message)
        self.chart_id = chart_id


class ChartMismatch(EngineError):
    """Objects from different charts were combined"""


class ZeroDivisionInField(EngineError, ZeroDivisionError):
    """Division by zero in the cyclotomic field"""


class ZeroFormError(EngineError, ValueError):
    """Monomial division requested on a zero polynomial or form"""


class CatalogKeyError(EngineError, KeyError):
    """Topology catalog has no entry for the requested key"""


EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INVARIANT = 2
EXIT_GUARD = 3


def exit_status_for(error: BaseException) -> int:
    """Map an exception to the CLI exit status"""
    if isinstance(error, ValidationError):
        return EXIT_VALIDATION
    if isinstance(error, GuardExhausted):
        return EXIT_GUARD
    return EXIT_INVARIANT
