"""Public data vocabulary: Pydantic models and exception hierarchy."""

from .exceptions import (
    BookRamseyError,
    BudgetExceededError,
    ConfigurationError,
    DecodeError,
    EncodingSizeError,
    InconclusiveError,
    ParseError,
    RegistryError,
    ValidationError,
    WitnessRejectedError,
)
from .models import (
    BookParams,
    BoundInterval,
    BoundKind,
    BoundRecord,
    ConditionReport,
    EnumerationResult,
    EnumerationStats,
    FamilyResult,
    IpOptions,
    ResidueClass,
    ResidueDifferenceRow,
    RunConfig,
    Side,
    SmallcaseResult,
    VerificationReport,
    WitnessKind,
    WitnessRef,
)

__all__ = [
    "BookRamseyError",
    "BudgetExceededError",
    "ConfigurationError",
    "DecodeError",
    "EncodingSizeError",
    "InconclusiveError",
    "ParseError",
    "RegistryError",
    "ValidationError",
    "WitnessRejectedError",
    "BookParams",
    "BoundInterval",
    "BoundKind",
    "BoundRecord",
    "ConditionReport",
    "EnumerationResult",
    "EnumerationStats",
    "FamilyResult",
    "IpOptions",
    "ResidueClass",
    "ResidueDifferenceRow",
    "RunConfig",
    "Side",
    "SmallcaseResult",
    "VerificationReport",
    "WitnessKind",
    "WitnessRef",
]
