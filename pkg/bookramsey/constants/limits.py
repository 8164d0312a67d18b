"""Size caps and search tunables shared across the package."""

from __future__ import annotations

MAX_VERTICES = 1024

GRAPH6_SHORT_MAX = 62

CANONICAL_MAX_N = 64

NAIVE_MAX_N = 12

BOOKS_MAX_N = 128

FIELD_MAX_ORDER = 2**20


ENUMERATION_ADVISORY_MAX_N = 16

CHECKPOINT_EVERY = 5000


DEFAULT_WORKERS = 1

PIN_PRESETS = {
    "consecutive": (1, 2, 3, 4),
    "squares": (1, 4, 9, 16),
}
