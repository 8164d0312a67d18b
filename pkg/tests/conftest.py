"""
Pytest configuration and shared fixtures for bookramsey tests.
"""

import os
import shutil
import tempfile
from pathlib import Path

import pytest

from bookramsey.circulant import BlockCirculantSpec
from bookramsey.witness import BoundsRegistry


@pytest.fixture
def temp_dir():
    """Create a temporary directory for files written by a test."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def registry_path(temp_dir):
    return temp_dir / "bounds.jsonl"


@pytest.fixture
def registry(registry_path):
    """Seeded registry backed by an empty user file."""
    return BoundsRegistry(registry_path)


@pytest.fixture
def clean_env(monkeypatch):
    """Drop every BOOKRAMSEY_* variable so defaults apply."""
    for key in list(os.environ):
        if key.startswith("BOOKRAMSEY_"):
            monkeypatch.delenv(key, raising=False)
    return monkeypatch


@pytest.fixture
def b5_b7_spec():
    return BlockCirculantSpec.from_sets(12, [2, 4, 5, 7, 8, 10], [0, 3, 4, 6, 11])
