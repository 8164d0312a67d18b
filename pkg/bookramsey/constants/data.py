"""Locations of the bundled data files."""

from __future__ import annotations

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

APPENDIX_JSON = DATA_DIR / "appendix.json"

MATRICES_DIR = DATA_DIR / "matrices"

SEED_REGISTRY = DATA_DIR / "bounds.jsonl"

REGISTRY_TEMP_SUFFIX = ".tmp"

DEFAULT_REGISTRY_FILENAME = "bounds.jsonl"
