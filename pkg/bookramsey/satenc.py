"""CNF encodings for the existence of Ramsey (B_r, B_s, n) graphs.

Two encodings are provided. The naive one forbids every embedded copy of
``B_r`` and of the complement of ``B_s`` clause by clause. The book encoding
introduces a triangle variable ``y_ijk`` and a co-triangle variable ``y'_ijk``
per triple and bounds, per vertex pair, how many of them may be true with a
totalizer. Variable layout and clause order are fixed so DIMACS output is
byte-stable.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, TextIO, Tuple, Union

import structlog
from pysat.formula import CNF, IDPool
from pysat.solvers import Solver

from .cardinality import TotalizerEncoding, at_most_k
from .config.logging import get_performance_logger
from .constants import BOOKS_MAX_N, NAIVE_MAX_N
from .graphs import Graph
from .types.exceptions import EncodingSizeError, ParseError, ValidationError
from .types.models import BookParams

logger = structlog.get_logger(__name__)

Clause = List[int]
Assignment = Union[Mapping[int, bool], Sequence[int]]


@dataclass
class CnfFormula:
    """Clause database; literals are nonzero signed variable indices."""

    num_vars: int = 0
    clauses: List[Clause] = field(default_factory=list)

    def __post_init__(self) -> None:
        for clause in self.clauses:
            self._check_clause(clause)

    def _check_clause(self, clause: Sequence[int]) -> None:
        seen = set()
        for lit in clause:
            if lit == 0:
                raise ValidationError("Clause contains the literal 0", {"clause": list(clause)})
            if abs(lit) > self.num_vars:
                raise ValidationError(f"Literal {lit} exceeds {self.num_vars} variables", {"clause": list(clause)})
            if -lit in seen:
                raise ValidationError("Clause contains a literal and its negation", {"clause": list(clause)})
            seen.add(lit)

    def add(self, clause: Sequence[int]) -> None:
        self._check_clause(clause)
        self.clauses.append(list(clause))

    def extend(self, clauses: Iterable[Sequence[int]]) -> None:
        for clause in clauses:
            self.add(clause)

    def to_pysat(self) -> CNF:
        cnf = CNF(from_clauses=self.clauses)
        cnf.nv = self.num_vars
        return cnf


@dataclass
class SymmetryBlock:
    """Lex constraint for one adjacent transposition ``(i, i+1)``.

    ``pairs`` holds the compared variable pairs ``(a_t, b_t)`` in word order
    and ``chain`` the prefix-equality variables ``e_1..e_{T-1}``.
    """

    i: int
    pairs: List[Tuple[int, int]]
    chain: List[int]


class VarMap:
    """Dense 1-based variable layout: x per pair, y and y' per triple, then auxiliaries."""

    def __init__(self, n: int, params: Optional[BookParams] = None):
        self.n = n
        self.params = params
        self.pool = IDPool()
        for i, j in itertools.combinations(range(n), 2):
            self.pool.id(("x", i, j))
        self.x_count = self.pool.top
        for triple in itertools.combinations(range(n), 3):
            self.pool.id(("y", *triple))
        for triple in itertools.combinations(range(n), 3):
            self.pool.id(("yc", *triple))
        self.base_count = self.pool.top
        self.totalizers: List[Tuple[str, Tuple[int, int], TotalizerEncoding]] = []
        self.symmetry: List[SymmetryBlock] = []

    @property
    def num_vars(self) -> int:
        return self.pool.top

    @property
    def triple_count(self) -> int:
        return comb(self.n, 3)

    def x(self, i: int, j: int) -> int:
        if i == j:
            raise ValidationError(f"No edge variable for the loop ({i},{i})")
        return self._lookup(("x", min(i, j), max(i, j)))

    def y(self, i: int, j: int, k: int) -> int:
        return self._lookup(("y", *sorted((i, j, k))))

    def yc(self, i: int, j: int, k: int) -> int:
        return self._lookup(("yc", *sorted((i, j, k))))

    def _lookup(self, key: Tuple) -> int:
        if key not in self.pool.obj2id:
            raise ValidationError(f"No variable {key} for n={self.n}")
        return self.pool.obj2id[key]

    def reserve(self, label: Tuple, count: int) -> List[int]:
        """Allocate ``count`` consecutive auxiliary variables."""
        ids = [self.pool.id((*label, t)) for t in range(count)]
        if ids and ids != list(range(ids[0], ids[0] + count)):
            raise ValidationError(f"Auxiliary variables for {label} are not contiguous")
        return ids

    def pairs(self) -> Iterable[Tuple[int, int]]:
        return itertools.combinations(range(self.n), 2)


def _tseitin_clauses(vm: VarMap) -> List[Clause]:
    clauses = []
    for i, j, k in itertools.combinations(range(vm.n), 3):
        xij, xik, xjk = vm.x(i, j), vm.x(i, k), vm.x(j, k)
        clauses.append([-xij, -xik, -xjk, vm.y(i, j, k)])
        clauses.append([xij, xik, xjk, vm.yc(i, j, k)])
    return clauses


def _cardinality_clauses(vm: VarMap, params: BookParams) -> List[Clause]:
    clauses: List[Clause] = []
    for i, j in vm.pairs():
        others = [k for k in range(vm.n) if k not in (i, j)]
        for family, bound in (("y", params.r - 1), ("yc", params.s - 1)):
            lits = [vm.y(i, j, k) if family == "y" else vm.yc(i, j, k) for k in others]
            encoding = at_most_k(lits, bound, vm.num_vars + 1)
            vm.reserve(("card", family, i, j), encoding.aux_count)
            vm.totalizers.append((family, (i, j), encoding))
            clauses.extend(encoding.clauses)
    return clauses


def _transposition_pairs(vm: VarMap, i: int) -> List[Tuple[int, int]]:
    swap = {i: i + 1, i + 1: i}
    pairs = []
    for a, b in vm.pairs():
        image = tuple(sorted((swap.get(a, a), swap.get(b, b))))
        if (a, b) < image:
            pairs.append((vm.x(a, b), vm.x(*image)))
    return pairs


def symmetry_breaking_clauses(n: int, vm: VarMap, next_var: Optional[int] = None) -> List[Clause]:
    """Lex-leader clauses for every adjacent transposition ``(i, i+1)``.

    The adjacency word (upper triangle, row-major) must be lexicographically
    at most its image under each transposition. Only positions moved by the
    transposition are compared, chained through prefix-equality variables.
    """
    if n < 2:
        raise ValidationError(f"Symmetry breaking needs n >= 2, got {n}")
    if next_var is not None and next_var != vm.num_vars + 1:
        raise ValidationError(f"next_var {next_var} does not follow the variable map ({vm.num_vars} used)")

    clauses: List[Clause] = []
    for i in range(n - 1):
        pairs = _transposition_pairs(vm, i)
        chain = vm.reserve(("sym", i), max(len(pairs) - 1, 0))
        for t, (a, b) in enumerate(pairs):
            prev = [-chain[t - 1]] if t > 0 else []
            clauses.append(prev + [-a, b])
            if t < len(pairs) - 1:
                clauses.append(prev + [-a, chain[t]])
                clauses.append(prev + [b, chain[t]])
        vm.symmetry.append(SymmetryBlock(i=i, pairs=pairs, chain=chain))
    return clauses


def encode_books(
    n: int,
    params: BookParams,
    symmetry_breaking: bool = False,
    max_n: int = BOOKS_MAX_N,
) -> Tuple[CnfFormula, VarMap]:
    """Triangle-variable encoding; satisfiable iff a Ramsey (B_r, B_s, n) graph exists.

    A pair needs at most ``r - 1`` triangles (and ``s - 1`` co-triangles)
    through it; bounds at or above ``n - 2`` are vacuous and emit nothing.
    """
    if n < 1:
        raise ValidationError(f"Vertex count must be positive, got {n}")
    if n > max_n:
        estimate = 2 * comb(n, 3) + comb(n, 2) * (n - 2) * (params.r + params.s)
        raise EncodingSizeError(f"Book encoding refused for n={n} > {max_n}", estimate=estimate, limit=max_n)

    with get_performance_logger().timed("encode_books", n=n, r=params.r, s=params.s) as stats:
        vm = VarMap(n, params)
        clauses = _tseitin_clauses(vm)
        clauses.extend(_cardinality_clauses(vm, params))
        if symmetry_breaking and n >= 2:
            clauses.extend(symmetry_breaking_clauses(n, vm))
        formula = CnfFormula(num_vars=vm.num_vars, clauses=clauses)
        stats.update(variables=formula.num_vars, clauses=len(formula.clauses))
    return formula, vm


def naive_clause_estimate(n: int, params: BookParams) -> int:
    return comb(n, 2) * (comb(n - 2, params.r) + comb(n - 2, params.s))


def encode_naive(n: int, params: BookParams, max_n: int = NAIVE_MAX_N) -> CnfFormula:
    """One clause per embedded ``B_r`` (all negative) and per co-``B_s`` (all positive).

    Variables are the edge variables ``x_ij`` numbered as in :class:`VarMap`.
    """
    if n < 1:
        raise ValidationError(f"Vertex count must be positive, got {n}")
    estimate = naive_clause_estimate(n, params)
    if n > max_n:
        raise EncodingSizeError(
            f"Naive encoding refused for n={n} > {max_n} ({estimate} clauses)",
            estimate=estimate,
            limit=max_n,
        )

    index = {pair: v for v, pair in enumerate(itertools.combinations(range(n), 2), start=1)}

    def x(a: int, b: int) -> int:
        return index[(a, b) if a < b else (b, a)]

    clauses: List[Clause] = []
    for i, j in itertools.combinations(range(n), 2):
        others = [k for k in range(n) if k not in (i, j)]
        for size, sign in ((params.r, -1), (params.s, 1)):
            for pages in itertools.combinations(others, size):
                lits = {x(i, j)}
                for k in pages:
                    lits.update((x(i, k), x(j, k)))
                clauses.append(sorted(sign * v for v in lits))
    logger.debug("Naive encoding built", n=n, clauses=len(clauses))
    return CnfFormula(num_vars=len(index), clauses=clauses)


def write_dimacs(formula: CnfFormula, sink: Optional[TextIO] = None) -> str:
    """Render DIMACS CNF (``p cnf V C`` header, zero-terminated clauses)."""
    buffer = io.StringIO()
    formula.to_pysat().to_fp(buffer)
    text = buffer.getvalue()
    if sink is not None:
        sink.write(text)
    return text


def write_varmap(vm: VarMap, sink: Optional[TextIO] = None) -> str:
    """Sidecar listing ``x i j v``, ``y i j k v`` and ``yc i j k v`` in index order."""
    lines = [f"x {i} {j} {vm.x(i, j)}" for i, j in vm.pairs()]
    for tag in ("y", "yc"):
        for i, j, k in itertools.combinations(range(vm.n), 3):
            var = vm.y(i, j, k) if tag == "y" else vm.yc(i, j, k)
            lines.append(f"{tag} {i} {j} {k} {var}")
    text = "".join(line + "\n" for line in lines)
    if sink is not None:
        sink.write(text)
    return text


def _truth(assignment: Assignment, num_vars: int) -> Dict[int, bool]:
    if isinstance(assignment, Mapping):
        truth = {int(v): bool(val) for v, val in assignment.items()}
    else:
        truth = {abs(lit): lit > 0 for lit in assignment if lit != 0}
    missing = [v for v in range(1, num_vars + 1) if v not in truth]
    if missing:
        raise ValidationError(
            f"Assignment does not cover {len(missing)} of {num_vars} variables (first: {missing[0]})",
            {"missing": len(missing)},
        )
    return truth


def check_model(formula: CnfFormula, assignment: Assignment) -> bool:
    """True iff every clause has a true literal under a complete assignment."""
    truth = _truth(assignment, formula.num_vars)
    return all(any(truth[abs(lit)] == (lit > 0) for lit in clause) for clause in formula.clauses)


def graph_to_assignment(g: Graph, vm: VarMap, params: Optional[BookParams] = None) -> List[int]:
    """Extend ``g``'s edge assignment to every variable of ``vm``.

    ``y``/``y'`` are exact triangle and co-triangle indicators, totalizer
    counters follow their node semantics and symmetry chain variables are the
    prefix equalities.
    """
    if g.n != vm.n:
        raise ValidationError(f"Graph has {g.n} vertices but the variable map expects {vm.n}")
    if params is not None and vm.params is not None and params != vm.params:
        raise ValidationError(f"Variable map was built for {vm.params}, not {params}")

    truth: Dict[int, bool] = {}
    for i, j in vm.pairs():
        truth[vm.x(i, j)] = g.has_edge(i, j)
    for i, j, k in itertools.combinations(range(vm.n), 3):
        edges = (g.has_edge(i, j), g.has_edge(i, k), g.has_edge(j, k))
        truth[vm.y(i, j, k)] = all(edges)
        truth[vm.yc(i, j, k)] = not any(edges)
    for _, _, encoding in vm.totalizers:
        truth.update(encoding.evaluate(truth))
    for block in vm.symmetry:
        equal = True
        for t, var in enumerate(block.chain):
            a, b = block.pairs[t]
            equal = equal and truth[a] == truth[b]
            truth[var] = equal
    return [v if truth.get(v, False) else -v for v in range(1, vm.num_vars + 1)]


def model_to_graph(model: Assignment, vm: VarMap) -> Graph:
    """Graph whose edges are the true x-variables of a solver model."""
    if isinstance(model, Mapping):
        truth = {int(v): bool(val) for v, val in model.items()}
    else:
        truth = {abs(lit): lit > 0 for lit in model if lit != 0}
    return Graph.from_edges(vm.n, (pair for pair in vm.pairs() if truth.get(vm.x(*pair), False)))


def has_extension(g: Graph, formula: CnfFormula, vm: VarMap) -> bool:
    """Whether ``g``'s edge assignment extends to a model of ``formula``.

    The extension built by :func:`graph_to_assignment` sets every auxiliary to
    its least value, so it is a model whenever any extension is.
    """
    return check_model(formula, graph_to_assignment(g, vm))


def read_model(text: str) -> List[int]:
    """Parse a solver model from ``v`` lines or a bare literal list; ``c``/``s`` lines are skipped."""
    literals: List[int] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] in ("c", "s"):
            continue
        if tokens[0] == "v":
            tokens = tokens[1:]
        for token in tokens:
            try:
                lit = int(token)
            except ValueError as exc:
                raise ParseError(f"Invalid literal {token!r} in solver model", line=line_no) from exc
            if lit == 0:
                return literals
            literals.append(lit)
    return literals


def solve(formula: CnfFormula, solver_name: str = "cadical195") -> Optional[List[int]]:
    """Solve with a bundled PySAT backend; returns a model or ``None`` when unsatisfiable."""
    with Solver(name=solver_name, bootstrap_with=formula.clauses) as solver:
        if not solver.solve():
            return None
        model = solver.get_model() or []
    truth = {abs(lit): lit > 0 for lit in model}
    return [v if truth.get(v, False) else -v for v in range(1, formula.num_vars + 1)]
