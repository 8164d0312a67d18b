"""Bundled lower-bound witnesses (2-block specs and explicit matrices)."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from ..circulant import BlockCirculantSpec, expand
from ..constants import APPENDIX_JSON, DATA_DIR
from ..graphs import Graph, parse_adjacency_text
from ..types.exceptions import BookRamseyError, ParseError
from ..types.models import BookParams

logger = structlog.get_logger(__name__)

_appendix_cache: Optional[List["WitnessEntry"]] = None

_GROUPS = ("diagonal", "adjacent", "gap_two", "explicit")


@dataclass(frozen=True)
class WitnessEntry:
    """A claimed bound ``R(B_r, B_s) >= bound`` with the graph that proves it."""

    key: str
    r: int
    s: int
    bound: int
    group: str
    spec: Optional[BlockCirculantSpec] = None
    matrix: Optional[Graph] = None

    @property
    def params(self) -> BookParams:
        return BookParams.of(self.r, self.s)

    @property
    def claim(self) -> str:
        return f"R(B_{self.r},B_{self.s}) >= {self.bound}"

    def graph(self) -> Graph:
        if self.spec is not None:
            return expand(self.spec)
        assert self.matrix is not None
        return self.matrix


def _parse_entry(index: int, row: Dict[str, Any], base: Path) -> WitnessEntry:
    key = row.get("key", f"#{index}")
    try:
        r, s, bound = int(row["r"]), int(row["s"]), int(row["bound"])
        group = row.get("group", "explicit")
        if group not in _GROUPS:
            raise ValueError(f"unknown group {group!r}")
        if row["kind"] == "spec":
            spec = BlockCirculantSpec.from_sets(int(row["m"]), row["d11"], row["d12"], row.get("d22"))
            return WitnessEntry(key=key, r=r, s=s, bound=bound, group=group, spec=spec)
        if row["kind"] == "matrix":
            text = (base / row["file"]).read_text(encoding="utf-8")
            return WitnessEntry(key=key, r=r, s=s, bound=bound, group=group, matrix=parse_adjacency_text(text))
        raise ValueError(f"unknown kind {row['kind']!r}")
    except (KeyError, TypeError, ValueError, OSError, BookRamseyError) as exc:
        raise ParseError(f"Malformed appendix row {index} ({key}): {exc}", line=index, details={"key": key}) from exc


def load_appendix(path: Optional[Path] = None) -> List[WitnessEntry]:
    """All bundled witnesses, in file order.

    The default file is parsed once and cached; an explicit ``path`` is
    always read fresh (matrix files resolve relative to its directory).

    Raises:
        ParseError: naming the first malformed row.
    """
    global _appendix_cache
    if path is None and _appendix_cache is not None:
        return list(_appendix_cache)

    source = APPENDIX_JSON if path is None else Path(path)
    base = DATA_DIR if path is None else source.parent
    try:
        with open(source, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Appendix file {source} is not valid JSON: {exc.msg}", line=exc.lineno) from exc

    entries = [_parse_entry(i, row, base) for i, row in enumerate(data.get("entries", []))]
    logger.debug("Loaded appendix", path=str(source), entries=len(entries))
    if path is None:
        _appendix_cache = entries
    return list(entries)


def find_entry(key: str) -> WitnessEntry:
    """Look up a bundled entry by key (``b5_b7``) or by ``r,s``."""
    for entry in load_appendix():
        if entry.key == key or f"{entry.r},{entry.s}" == key:
            return entry
    raise BookRamseyError(f"No appendix entry {key!r}", {"key": key})
