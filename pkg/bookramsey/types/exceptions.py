"""Custom exceptions for the bookramsey package."""

from typing import Any, Dict, Optional


class BookRamseyError(Exception):
    """Base exception for all bookramsey errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} - Details: {self.details}"
        return self.message


class ValidationError(BookRamseyError):
    """Raised when an argument or a domain invariant is violated."""

    def __init__(
        self,
        message: str = "Validation failed",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class ParseError(BookRamseyError):
    """Raised when text input (graph6, matrix, spec, solution) cannot be parsed."""

    def __init__(
        self,
        message: str = "Parse error",
        line: Optional[int] = None,
        position: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        if details is None:
            details = {}
        if line is not None:
            details["line"] = line
        if position is not None:
            details["position"] = position
        self.line = line
        self.position = position
        super().__init__(message, details)


class ConfigurationError(BookRamseyError):
    """Raised when configuration is invalid or missing."""

    def __init__(
        self,
        message: str = "Configuration error",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class EncodingSizeError(BookRamseyError):
    """Raised when an encoding would exceed its size guard."""

    def __init__(self, message: str = "Encoding too large", estimate: int = 0, limit: Optional[int] = None):
        details: Dict[str, Any] = {"estimate": estimate}
        if limit is not None:
            details["limit"] = limit
        self.estimate = estimate
        self.limit = limit
        super().__init__(message, details)


class DecodeError(BookRamseyError):
    """Raised when a solver assignment does not decode to a valid object."""

    def __init__(
        self,
        message: str = "Decode failed",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class BudgetExceededError(BookRamseyError):
    """Raised when a search runs out of its wall-clock budget.

    ``progress`` carries whatever was completed before the deadline so callers
    can report partial results.
    """

    def __init__(
        self,
        message: str = "Search budget exhausted",
        progress: Optional[Dict[str, Any]] = None,
    ):
        self.progress = progress or {}
        super().__init__(message, {"progress": self.progress})


class InconclusiveError(BookRamseyError):
    """Raised when a computation cannot decide within its caps."""

    def __init__(
        self,
        message: str = "Computation inconclusive",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class RegistryError(BookRamseyError):
    """Raised when the bounds registry cannot be read, written or updated."""

    def __init__(
        self,
        message: str = "Registry error",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class WitnessRejectedError(RegistryError):
    """Raised when a bound record's witness fails verification on insert."""

    def __init__(self, r: int, s: int, value: int, report: Any = None, message: Optional[str] = None):
        if message is None:
            message = f"Witness for R(B_{r},B_{s}) >= {value} does not verify"
        self.report = report
        details: Dict[str, Any] = {"r": r, "s": s, "value": value}
        if report is not None and hasattr(report, "model_dump"):
            details["report"] = report.model_dump()
        super().__init__(message, details)
