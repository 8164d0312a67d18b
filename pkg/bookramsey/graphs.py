"""Undirected simple graphs with bitset rows, book detection and text/graph6 I/O.

Vertex ``v``'s neighbourhood is the integer ``rows[v]`` whose bit ``w`` is set
iff ``{v, w}`` is an edge. A graph contains the book ``B_r`` iff some edge has
at least ``r`` common neighbours, so every book query reduces to popcounts of
``rows[u] & rows[v]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from .constants import MAX_VERTICES
from .types.exceptions import ParseError, ValidationError
from .types.models import BookParams, Side

logger = structlog.get_logger(__name__)

Edge = Tuple[int, int]

_GRAPH6_HEADER = ">>graph6<<"
_ROW_SPLIT = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValidationError(
                f"Vertex count must be between 1 and {MAX_VERTICES}, got {self.n}",
                {"n": self.n},
            )
        if len(self.rows) != self.n:
            raise ValidationError(f"Expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValidationError(f"Row {u} references a vertex >= {self.n}", {"row": u})
            if (row >> u) & 1:
                raise ValidationError(f"Self-loop at vertex {u}", {"row": u})
            for v in _bits(row):
                if not (self.rows[v] >> u) & 1:
                    raise ValidationError(f"Adjacency is not symmetric at ({u},{v})", {"row": u, "column": v})

    # -- builders ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValidationError(f"Self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValidationError(f"A cycle needs at least 3 vertices, got {n}")
        return cls.from_edges(n, ((v, (v + 1) % n) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((v, v + 1) for v in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """``K_{1,leaves}`` with the centre at vertex 0."""
        return cls.from_edges(leaves + 1, ((0, v) for v in range(1, leaves + 1)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Graph":
        """Build from a square 0/1 matrix (validated by the constructor)."""
        rows = []
        for row in np.asarray(matrix, dtype=np.int64):
            mask = 0
            for v in np.flatnonzero(row):
                mask |= 1 << int(v)
            rows.append(mask)
        return cls(len(rows), tuple(rows))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        index = {node: i for i, node in enumerate(graph.nodes)}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in graph.edges))

    # -- queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> List[int]:
        self._check_vertex(v)
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValidationError("Relabeling must be a permutation of the vertices")
        rows = [0] * self.n
        for u, row in enumerate(self.rows):
            mask = 0
            for v in _bits(row):
                mask |= 1 << perm[v]
            rows[perm[u]] = mask
        return Graph(self.n, tuple(rows))

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph on ``vertices``, renumbered in the given order."""
        for v in vertices:
            self._check_vertex(v)
        rows = []
        for u in vertices:
            mask = 0
            for i, v in enumerate(vertices):
                if (self.rows[u] >> v) & 1:
                    mask |= 1 << i
            rows.append(mask)
        return Graph(len(rows), tuple(rows))

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced_subgraph([u for u in range(self.n) if u != v])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def to_numpy(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1
        return matrix

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValidationError(f"Vertex {v} out of range for n={self.n}", {"vertex": v, "n": self.n})


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """Number of vertices adjacent to both ``u`` and ``v``."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise ValidationError(f"Common neighbours need two distinct vertices, got {u} twice")
    return (g.rows[u] & g.rows[v]).bit_count()


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(row ^ full ^ (1 << v) for v, row in enumerate(g.rows)))


def _worst_edge(g: Graph) -> Tuple[int, Optional[Edge]]:
    best, where = 0, None
    for u, v in g.edges():
        pages = (g.rows[u] & g.rows[v]).bit_count()
        if where is None or pages > best:
            best, where = pages, (u, v)
    return best, where


def max_book_pages(g: Graph) -> int:
    """Largest common-neighbour count over the edges (0 for edgeless graphs)."""
    return _worst_edge(g)[0]


@dataclass(frozen=True)
class BookProfile:
    """Worst edge of a graph and of its complement, with their page counts."""

    graph_max: int
    graph_edge: Optional[Edge]
    complement_max: int
    complement_edge: Optional[Edge]

    def violation(self, params: BookParams) -> Optional[Tuple[Side, Edge]]:
        """First side whose worst edge carries a forbidden book."""
        if self.graph_edge is not None and self.graph_max >= params.r:
            return Side.GRAPH, self.graph_edge
        if self.complement_edge is not None and self.complement_max >= params.s:
            return Side.COMPLEMENT, self.complement_edge
        return None


def book_profile(g: Graph) -> BookProfile:
    graph_max, graph_edge = _worst_edge(g)
    comp_max, comp_edge = _worst_edge(complement(g))
    return BookProfile(graph_max, graph_edge, comp_max, comp_edge)


def is_ramsey_graph(g: Graph, params: BookParams) -> bool:
    """True iff ``g`` has no ``B_r`` and its complement has no ``B_s``."""
    return max_book_pages(g) < params.r and max_book_pages(complement(g)) < params.s


# -- graph6 ---------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).strip().decode("ascii")


def from_graph6(text: str) -> Graph:
    """Decode a graph6 string, rejecting bytes outside the printable range."""
    data = text.strip()
    if data.startswith(_GRAPH6_HEADER):
        data = data[len(_GRAPH6_HEADER) :]
    if not data:
        raise ParseError("Empty graph6 string", position=0)
    for position, char in enumerate(data):
        if not 63 <= ord(char) <= 126:
            raise ParseError(f"Invalid graph6 byte {char!r} at position {position}", position=position)
    try:
        graph = nx.from_graph6_bytes(data.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise ParseError(f"Malformed graph6 string: {exc}", position=0) from exc
    if graph.number_of_nodes() == 0:
        raise ParseError("graph6 string encodes an empty vertex set", position=0)
    return Graph.from_edges(graph.number_of_nodes(), graph.edges)


def graph6_roundtrip(g: Graph) -> str:
    """Encode ``g`` and check that decoding returns the same graph."""
    text = to_graph6(g)
    if from_graph6(text) != g:
        raise ValidationError(f"graph6 roundtrip mismatch for {text}")
    return text


# -- adjacency text -------------------------------------------------------


def parse_adjacency_text(text: str) -> Graph:
    """Parse one 0/1 row per line; commas, spaces and square brackets are ignored.

    Raises:
        ParseError: on non-binary entries, ragged or non-square input, a
            non-zero diagonal or an asymmetric matrix, naming the first bad row.
    """
    rows: List[List[int]] = []
    row_lines: List[int] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        cleaned = line.replace("[", " ").replace("]", " ").strip()
        if not cleaned:
            continue
        tokens = [t for t in _ROW_SPLIT.split(cleaned) if t]
        if any(t not in ("0", "1") for t in tokens):
            raise ParseError(f"Row {len(rows)} contains a non-binary entry", line=line_no)
        if rows and len(tokens) != len(rows[0]):
            raise ParseError(
                f"Row {len(rows)} has {len(tokens)} entries, expected {len(rows[0])}",
                line=line_no,
            )
        rows.append([int(t) for t in tokens])
        row_lines.append(line_no)

    if not rows:
        raise ParseError("Adjacency text contains no rows")
    matrix = np.array(rows, dtype=np.int8)
    n = matrix.shape[0]
    if matrix.shape[1] != n:
        raise ParseError(f"Matrix is {n}x{matrix.shape[1]}, expected a square matrix")
    diagonal = np.flatnonzero(np.diagonal(matrix))
    if diagonal.size:
        raise ParseError(f"Row {int(diagonal[0])} has a non-zero diagonal entry", line=row_lines[int(diagonal[0])])
    asymmetric = np.flatnonzero((matrix != matrix.T).any(axis=1))
    if asymmetric.size:
        raise ParseError(f"Row {int(asymmetric[0])} breaks symmetry", line=row_lines[int(asymmetric[0])])
    logger.debug("Parsed adjacency matrix", n=n)
    return Graph.from_matrix(matrix)


def format_adjacency_text(g: Graph) -> str:
    lines = []
    for u in range(g.n):
        lines.append("[" + ", ".join("1" if g.has_edge(u, v) else "0" for v in range(g.n)) + "]")
    return "\n".join(lines) + "\n"


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (``2^C(n,2)`` of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if (mask >> i) & 1))
