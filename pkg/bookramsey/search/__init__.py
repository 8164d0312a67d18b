"""Canonical labeling and isomorph-free enumeration of Ramsey book graphs."""

from .canonical import (
    CanonicalForm,
    CanonicalLabeling,
    canonical_form,
    canonical_labeling,
    canonical_last_vertex,
    is_isomorphic,
)
from .enumerate import (
    brute_force_classes,
    enumerate_ramsey_graphs,
    extend_parent,
    iter_levels,
    ramsey_number_smallcase,
)
from .pool import run_batches, split_batches

__all__ = [
    "CanonicalForm",
    "CanonicalLabeling",
    "canonical_form",
    "canonical_labeling",
    "canonical_last_vertex",
    "is_isomorphic",
    "brute_force_classes",
    "enumerate_ramsey_graphs",
    "extend_parent",
    "iter_levels",
    "ramsey_number_smallcase",
    "run_batches",
    "split_batches",
]
