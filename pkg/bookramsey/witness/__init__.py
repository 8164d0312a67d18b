"""Bundled witnesses, their verification and the bounds registry."""

from .appendix import WitnessEntry, find_entry, load_appendix
from .registry import (
    BoundsRegistry,
    read_records,
    registry_put,
    registry_query,
    witness_fingerprint,
    write_records,
)
from .verify import (
    resolve_witness,
    verify_appendix,
    verify_bound,
    verify_graph,
    verify_sets,
    verify_spec,
    verify_witness,
)

__all__ = [
    "WitnessEntry",
    "find_entry",
    "load_appendix",
    "BoundsRegistry",
    "read_records",
    "registry_put",
    "registry_query",
    "witness_fingerprint",
    "write_records",
    "resolve_witness",
    "verify_appendix",
    "verify_bound",
    "verify_graph",
    "verify_sets",
    "verify_spec",
    "verify_witness",
]
