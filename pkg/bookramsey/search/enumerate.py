"""Isomorph-free enumeration of Ramsey (B_r, B_s, n) graphs.

Graphs grow one vertex at a time. A child of a canonical parent ``P`` on
``n - 1`` vertices is kept only if deleting the child's canonically last
vertex gives back ``P``'s class, so every class on ``n`` vertices is reached
from exactly one parent class. Children of the same parent are deduplicated
by canonical form. Extensions creating a book in the graph or in its
complement are cut before any canonical labeling happens.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set

import structlog

from ..config.logging import get_performance_logger
from ..constants import CANONICAL_MAX_N, CHECKPOINT_EVERY, ENUMERATION_ADVISORY_MAX_N
from ..graphs import Graph, all_graphs, from_graph6, is_ramsey_graph, to_graph6
from ..types.exceptions import BudgetExceededError, InconclusiveError, ValidationError
from ..types.models import BookParams, EnumerationResult, EnumerationStats, SmallcaseResult
from .canonical import canonical_form, canonical_last_vertex
from .pool import run_batches, split_batches

logger = structlog.get_logger(__name__)

SINGLE_VERTEX = "@"

BRUTE_FORCE_MAX_N = 7


@dataclass
class BatchResult:
    forms: List[str] = field(default_factory=list)
    nodes: int = 0
    candidates: int = 0
    complete: bool = True


@dataclass
class LevelResult:
    n: int
    forms: List[str]
    nodes: int
    candidates: int


def _tight_pairs(rows: Sequence[int], limit: int, full: int, complement: bool) -> List[int]:
    """Pair masks whose (co-)common count already equals ``limit - 1``."""
    out = []
    n = len(rows)
    for a in range(n):
        for b in range(a + 1, n):
            adjacent = bool((rows[a] >> b) & 1)
            if adjacent == complement:
                continue
            if complement:
                count = (full & ~rows[a] & ~rows[b] & ~(1 << a) & ~(1 << b)).bit_count()
            else:
                count = (rows[a] & rows[b]).bit_count()
            if count == limit - 1:
                out.append((1 << a) | (1 << b))
    return out


class _Extender:
    """Book-aware pruning for extensions of one parent."""

    def __init__(self, parent: Graph, params: BookParams):
        self.rows = parent.rows
        self.n = parent.n
        self.full = (1 << parent.n) - 1
        self.r = params.r
        self.s = params.s
        self.tight_edges = _tight_pairs(self.rows, self.r, self.full, complement=False)
        self.tight_coedges = _tight_pairs(self.rows, self.s, self.full, complement=True)

    def admissible(self, mask: int) -> bool:
        """True iff joining a new vertex to ``mask`` creates no ``B_r`` and no co-``B_s``."""
        for pair in self.tight_edges:
            if mask & pair == pair:
                return False
        for pair in self.tight_coedges:
            if not mask & pair:
                return False
        outside = self.full & ~mask
        for u in range(self.n):
            bit = 1 << u
            if mask & bit:
                if (self.rows[u] & mask).bit_count() >= self.r:
                    return False
            elif (outside & ~self.rows[u] & ~bit).bit_count() >= self.s:
                return False
        return True

    def child(self, mask: int) -> Graph:
        v = self.n
        rows = [row | (((mask >> u) & 1) << v) for u, row in enumerate(self.rows)]
        rows.append(mask)
        return Graph(self.n + 1, tuple(rows))


def extend_parent(
    parent_form: str,
    params: BookParams,
    deadline: Optional[float] = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> BatchResult:
    """Canonical children of one parent, neighbourhoods tried in decreasing order."""
    parent = from_graph6(parent_form)
    extender = _Extender(parent, params)
    result = BatchResult()
    seen: Set[str] = set()
    for mask in range((1 << parent.n) - 1, -1, -1):
        result.candidates += 1
        if result.candidates % checkpoint_every == 0:
            logger.debug("Enumeration checkpoint", parent=parent_form, candidates=result.candidates, nodes=result.nodes)
            if deadline is not None and time.time() > deadline:
                result.complete = False
                break
        if not extender.admissible(mask):
            continue
        result.nodes += 1
        child = extender.child(mask)
        last, labeling = canonical_last_vertex(child)
        if canonical_form(child.delete_vertex(last)).graph6 != parent_form:
            continue
        form = to_graph6(labeling.apply(child))
        if form not in seen:
            seen.add(form)
            result.forms.append(form)
    return result


def _extend_batch(
    parents: List[str],
    params: BookParams,
    deadline: Optional[float],
    checkpoint_every: int,
) -> BatchResult:
    total = BatchResult()
    for parent_form in parents:
        if deadline is not None and time.time() > deadline:
            total.complete = False
            break
        part = extend_parent(parent_form, params, deadline, checkpoint_every)
        total.forms.extend(part.forms)
        total.nodes += part.nodes
        total.candidates += part.candidates
        if not part.complete:
            total.complete = False
            break
    return total


def iter_levels(
    params: BookParams,
    n_max: int,
    budget: Optional[float] = None,
    workers: int = 1,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> Iterator[LevelResult]:
    """Yield the canonical Ramsey graphs for ``n = 1, 2, ..., n_max``.

    Raises:
        BudgetExceededError: when the wall-clock budget runs out; ``progress``
            holds the completed levels and their counts.
    """
    if n_max > CANONICAL_MAX_N:
        raise ValidationError(f"Enumeration supports at most {CANONICAL_MAX_N} vertices", {"n": n_max})
    start = time.time()
    deadline = start + budget if budget else None
    level_counts: Dict[int, int] = {}
    nodes = 0

    forms = [SINGLE_VERTEX]
    level_counts[1] = 1
    yield LevelResult(n=1, forms=forms, nodes=0, candidates=0)
    for n in range(2, n_max + 1):
        job = functools.partial(_extend_batch, params=params, deadline=deadline, checkpoint_every=checkpoint_every)
        parts = run_batches(job, split_batches(forms, max(1, workers) * 4), workers)
        merged: List[str] = []
        level_nodes = level_candidates = 0
        for part in parts:
            merged.extend(part.forms)
            level_nodes += part.nodes
            level_candidates += part.candidates
        nodes += level_nodes
        if not all(part.complete for part in parts):
            progress = {
                "levels_completed": n - 1,
                "level_counts": dict(level_counts),
                "nodes": nodes,
                "elapsed_seconds": round(time.time() - start, 3),
            }
            logger.warning("Enumeration budget exhausted", n=n, **progress)
            raise BudgetExceededError(f"Budget of {budget}s exhausted while building level {n}", progress)
        forms = sorted(set(merged))
        level_counts[n] = len(forms)
        get_performance_logger().checkpoint(
            "enumerate",
            n=n,
            graphs=len(forms),
            nodes=level_nodes,
            candidates=level_candidates,
            elapsed=round(time.time() - start, 3),
        )
        yield LevelResult(n=n, forms=forms, nodes=level_nodes, candidates=level_candidates)


def enumerate_ramsey_graphs(
    n: int,
    params: BookParams,
    budget: Optional[float] = None,
    workers: int = 1,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> EnumerationResult:
    """One canonical representative per isomorphism class of Ramsey (B_r, B_s, n) graphs."""
    if n < 1:
        raise ValidationError(f"Vertex count must be positive, got {n}", {"n": n})
    if n > ENUMERATION_ADVISORY_MAX_N:
        logger.warning("Enumeration beyond advisory size", n=n, advisory=ENUMERATION_ADVISORY_MAX_N)
    start = time.time()
    stats = EnumerationStats(workers=workers)
    graphs: List[str] = []
    for level in iter_levels(params, n, budget=budget, workers=workers, checkpoint_every=checkpoint_every):
        stats.level_counts[level.n] = len(level.forms)
        stats.nodes += level.nodes
        stats.candidates += level.candidates
        graphs = level.forms
        if not graphs:
            for rest in range(level.n + 1, n + 1):
                stats.level_counts[rest] = 0
            break
    stats.accepted = sum(stats.level_counts.values())
    stats.elapsed_seconds = round(time.time() - start, 3)
    return EnumerationResult(n=n, r=params.r, s=params.s, graphs=graphs, stats=stats)


def ramsey_number_smallcase(
    params: BookParams,
    n_cap: int,
    budget: Optional[float] = None,
    workers: int = 1,
) -> SmallcaseResult:
    """Smallest ``n <= n_cap`` with no Ramsey (B_r, B_s, n) graph, plus the critical graphs on ``n - 1``."""
    start = time.time()
    previous: List[str] = []
    level_counts: Dict[int, int] = {}
    try:
        for level in iter_levels(params, n_cap, budget=budget, workers=workers):
            level_counts[level.n] = len(level.forms)
            if not level.forms:
                return SmallcaseResult(
                    r=params.r,
                    s=params.s,
                    value=level.n,
                    critical_count=len(previous),
                    level_counts=level_counts,
                    critical_graphs=previous,
                    elapsed_seconds=round(time.time() - start, 3),
                )
            previous = level.forms
    except BudgetExceededError as exc:
        raise InconclusiveError(
            f"No empty level for {params} before the budget ran out",
            {"progress": exc.progress},
        ) from exc
    raise InconclusiveError(
        f"Ramsey (B_{params.r}, B_{params.s}) graphs exist on all n <= {n_cap}",
        {"n_cap": n_cap, "level_counts": level_counts},
    )


def brute_force_classes(n: int, params: BookParams) -> Dict[str, int]:
    """Canonical forms of all labeled Ramsey graphs on ``n`` vertices with their labeled counts."""
    if n > BRUTE_FORCE_MAX_N:
        raise ValidationError(f"Brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}", {"n": n})
    classes: Dict[str, int] = {}
    for g in all_graphs(n):
        if is_ramsey_graph(g, params):
            key = canonical_form(g).graph6
            classes[key] = classes.get(key, 0) + 1
    return dict(sorted(classes.items()))
