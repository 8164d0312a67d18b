"""Canonical labeling by partition refinement and individualization.

The search tree is the usual one: refine the unit partition to an equitable
ordered partition, individualize each vertex of the first non-singleton cell
in turn and refine again, down to discrete partitions. Every leaf is a
labeling; the canonical one is the leaf whose relabeled adjacency rows are
lexicographically largest. Two leaves with equal rows yield an automorphism,
and children of a node that lie in one orbit of the automorphisms fixing the
node's individualized vertices are explored once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from ..constants import CANONICAL_MAX_N
from ..graphs import Graph, to_graph6
from ..types.exceptions import ValidationError

logger = structlog.get_logger(__name__)

Partition = List[List[int]]
Certificate = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """graph6 text of the canonically relabeled graph; equal iff isomorphic."""

    n: int
    graph6: str

    def __str__(self) -> str:
        return self.graph6


@dataclass
class CanonicalLabeling:
    """``perm[v]`` is the canonical label of vertex ``v``."""

    perm: Tuple[int, ...]
    generators: List[Tuple[int, ...]]
    leaves: int

    def apply(self, g: Graph) -> Graph:
        return g.relabel(self.perm)


def _refine(rows: Sequence[int], partition: Partition) -> Partition:
    """Coarsest equitable refinement, splitting cells by neighbour counts."""
    cells = [list(cell) for cell in partition]
    changed = True
    while changed:
        changed = False
        for w in range(len(cells)):
            splitter = 0
            for v in cells[w]:
                splitter |= 1 << v
            for index, cell in enumerate(cells):
                if len(cell) == 1:
                    continue
                groups: Dict[int, List[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & splitter).bit_count(), []).append(v)
                if len(groups) > 1:
                    cells[index : index + 1] = [groups[k] for k in sorted(groups)]
                    changed = True
                    break
            if changed:
                break
    return cells


def _individualize(partition: Partition, index: int, v: int) -> Partition:
    cell = partition[index]
    rest = [u for u in cell if u != v]
    return partition[:index] + [[v], rest] + partition[index + 1 :]


def _certificate(rows: Sequence[int], order: Sequence[int]) -> Certificate:
    """Relabeled rows for the labeling that puts ``order[k]`` at position ``k``."""
    position = [0] * len(order)
    for k, v in enumerate(order):
        position[v] = k
    out = []
    for v in order:
        row = 0
        mask = rows[v]
        while mask:
            low = mask & -mask
            row |= 1 << (len(order) - 1 - position[low.bit_length() - 1])
            mask ^= low
        out.append(row)
    return tuple(out)


class _Orbits:
    """Union-find over vertices merged by automorphism generators."""

    def __init__(self, n: int, generators: Sequence[Tuple[int, ...]]):
        self.parent = list(range(n))
        for gen in generators:
            for v, image in enumerate(gen):
                self._union(v, image)

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def _union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.rows = g.rows
        self.best: Optional[Certificate] = None
        self.best_order: Optional[List[int]] = None
        self.generators: List[Tuple[int, ...]] = []
        self.leaves = 0

    def run(self) -> None:
        self._visit(_refine(self.rows, [list(range(self.n))]), [])

    def _visit(self, partition: Partition, prefix: List[int]) -> None:
        target = next((i for i, cell in enumerate(partition) if len(cell) > 1), None)
        if target is None:
            self._leaf([cell[0] for cell in partition])
            return
        explored: List[int] = []
        for v in partition[target]:
            if explored:
                fixing = [gen for gen in self.generators if all(gen[u] == u for u in prefix)]
                if fixing:
                    orbits = _Orbits(self.n, fixing)
                    if orbits.find(v) in {orbits.find(u) for u in explored}:
                        continue
            explored.append(v)
            self._visit(_refine(self.rows, _individualize(partition, target, v)), prefix + [v])

    def _leaf(self, order: List[int]) -> None:
        self.leaves += 1
        cert = _certificate(self.rows, order)
        if self.best is None or cert > self.best:
            self.best = cert
            self.best_order = order
        elif cert == self.best:
            assert self.best_order is not None
            # order[k] and best_order[k] play the same role
            gen = [0] * self.n
            for a, b in zip(order, self.best_order):
                gen[a] = b
            if any(gen[v] != v for v in range(self.n)):
                self.generators.append(tuple(gen))


def _check_size(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        raise ValidationError(
            f"Canonical labeling supports at most {max_n} vertices, got {g.n}",
            {"n": g.n, "limit": max_n},
        )


def canonical_labeling(g: Graph, max_n: int = CANONICAL_MAX_N) -> CanonicalLabeling:
    """Canonical relabeling of ``g`` plus the automorphisms met on the way."""
    _check_size(g, max_n)
    search = _Search(g)
    search.run()
    assert search.best_order is not None
    perm = [0] * g.n
    for k, v in enumerate(search.best_order):
        perm[v] = k
    return CanonicalLabeling(perm=tuple(perm), generators=search.generators, leaves=search.leaves)


def canonical_form(g: Graph, max_n: int = CANONICAL_MAX_N) -> CanonicalForm:
    labeling = canonical_labeling(g, max_n=max_n)
    return CanonicalForm(n=g.n, graph6=to_graph6(labeling.apply(g)))


def canonical_last_vertex(g: Graph, max_n: int = CANONICAL_MAX_N) -> Tuple[int, CanonicalLabeling]:
    """The vertex labeled ``n - 1`` canonically, with the labeling used."""
    labeling = canonical_labeling(g, max_n=max_n)
    return labeling.perm.index(g.n - 1), labeling


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)
