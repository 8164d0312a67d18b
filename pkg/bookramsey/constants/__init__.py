"""Internal tunable constants used across the package."""

from __future__ import annotations

from .data import (
    APPENDIX_JSON,
    DATA_DIR,
    DEFAULT_REGISTRY_FILENAME,
    MATRICES_DIR,
    REGISTRY_TEMP_SUFFIX,
    SEED_REGISTRY,
)
from .limits import (
    BOOKS_MAX_N,
    CANONICAL_MAX_N,
    CHECKPOINT_EVERY,
    DEFAULT_WORKERS,
    ENUMERATION_ADVISORY_MAX_N,
    FIELD_MAX_ORDER,
    GRAPH6_SHORT_MAX,
    MAX_VERTICES,
    NAIVE_MAX_N,
    PIN_PRESETS,
)

__all__ = [
    "APPENDIX_JSON",
    "DATA_DIR",
    "DEFAULT_REGISTRY_FILENAME",
    "MATRICES_DIR",
    "REGISTRY_TEMP_SUFFIX",
    "SEED_REGISTRY",
    "BOOKS_MAX_N",
    "CANONICAL_MAX_N",
    "CHECKPOINT_EVERY",
    "DEFAULT_WORKERS",
    "ENUMERATION_ADVISORY_MAX_N",
    "FIELD_MAX_ORDER",
    "GRAPH6_SHORT_MAX",
    "MAX_VERTICES",
    "NAIVE_MAX_N",
    "PIN_PRESETS",
]
