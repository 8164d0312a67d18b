"""Tests for the CNF encodings of Ramsey book graphs."""

import io
import itertools

import pytest

from bookramsey.field import paley_graph
from bookramsey.graphs import Graph, all_graphs, is_ramsey_graph
from bookramsey.satenc import (
    CnfFormula,
    VarMap,
    check_model,
    encode_books,
    encode_naive,
    graph_to_assignment,
    has_extension,
    model_to_graph,
    naive_clause_estimate,
    read_model,
    solve,
    symmetry_breaking_clauses,
    write_dimacs,
    write_varmap,
)
from bookramsey.search import canonical_form
from bookramsey.types.exceptions import EncodingSizeError, ParseError, ValidationError
from bookramsey.types.models import BookParams

TRIANGLE_DIMACS = (
    "p cnf 5 8\n"
    "-1 -2 -3 4 0\n"
    "1 2 3 5 0\n"
    "-4 0\n"
    "-5 0\n"
    "-4 0\n"
    "-5 0\n"
    "-4 0\n"
    "-5 0\n"
)

# Non-isomorphic graphs on n vertices.
GRAPH_CLASSES = {2: 2, 3: 4, 4: 11, 5: 34, 6: 156}


def _symmetry_only(n):
    vm = VarMap(n)
    clauses = symmetry_breaking_clauses(n, vm)
    return CnfFormula(num_vars=vm.num_vars, clauses=clauses), vm


class TestCnfFormula:
    def test_rejects_zero_literal(self):
        with pytest.raises(ValidationError):
            CnfFormula(num_vars=2, clauses=[[1, 0]])

    def test_rejects_unknown_variable(self):
        with pytest.raises(ValidationError):
            CnfFormula(num_vars=2, clauses=[[3]])

    def test_rejects_tautology(self):
        formula = CnfFormula(num_vars=2)
        with pytest.raises(ValidationError):
            formula.add([1, -1])

    def test_extend(self):
        formula = CnfFormula(num_vars=3)
        formula.extend([[1, 2], [-3]])
        assert formula.clauses == [[1, 2], [-3]]


class TestVarMap:
    def test_layout(self):
        vm = VarMap(4)
        assert vm.x(0, 1) == 1
        assert vm.x(3, 2) == 6
        assert vm.y(0, 1, 2) == 7
        assert vm.yc(0, 1, 2) == 7 + vm.triple_count
        assert vm.num_vars == 6 + 2 * 4

    def test_loop_has_no_variable(self):
        with pytest.raises(ValidationError):
            VarMap(3).x(1, 1)

    def test_unknown_triple(self):
        with pytest.raises(ValidationError):
            VarMap(3).y(0, 1, 5)

    def test_varmap_sidecar(self):
        _, vm = encode_books(3, BookParams.of(1, 1))
        assert write_varmap(vm) == "x 0 1 1\nx 0 2 2\nx 1 2 3\ny 0 1 2 4\nyc 0 1 2 5\n"


class TestBookEncoding:
    def test_golden_dimacs(self):
        formula, _ = encode_books(3, BookParams.of(1, 1))
        assert write_dimacs(formula) == TRIANGLE_DIMACS

    def test_dimacs_written_to_sink(self):
        formula, _ = encode_books(3, BookParams.of(1, 1))
        sink = io.StringIO()
        write_dimacs(formula, sink)
        assert sink.getvalue() == TRIANGLE_DIMACS

    def test_vacuous_bounds_emit_no_cardinality(self):
        formula, vm = encode_books(4, BookParams.of(3, 3))
        assert len(formula.clauses) == 2 * vm.triple_count
        assert formula.num_vars == vm.base_count

    def test_symmetry_breaking_clauses(self):
        formula, vm = encode_books(3, BookParams.of(1, 1), symmetry_breaking=True)
        assert formula.clauses[-2:] == [[-2, 3], [-1, 2]]
        assert len(vm.symmetry) == 2

    def test_symmetry_next_var_must_follow_map(self):
        vm = VarMap(3)
        with pytest.raises(ValidationError):
            symmetry_breaking_clauses(3, vm, next_var=1)

    def test_size_guard(self):
        with pytest.raises(EncodingSizeError) as exc_info:
            encode_books(10, BookParams.of(2, 2), max_n=8)
        assert exc_info.value.limit == 8
        assert exc_info.value.estimate > 0

    def test_five_cycle_extends_to_model(self):
        formula, vm = encode_books(5, BookParams.of(1, 1))
        assert has_extension(Graph.cycle(5), formula, vm)
        assert not has_extension(Graph.path(5), formula, vm)

    def test_extension_with_totalizers(self):
        params = BookParams.of(2, 3)
        formula, vm = encode_books(6, params)
        g = Graph.cycle(6)
        assert is_ramsey_graph(g, params)
        assignment = graph_to_assignment(g, vm, params)
        assert check_model(formula, assignment)
        assert model_to_graph(assignment, vm) == g

    def test_graph_size_must_match(self):
        _, vm = encode_books(4, BookParams.of(1, 1))
        with pytest.raises(ValidationError):
            graph_to_assignment(Graph.cycle(5), vm)

    @pytest.mark.parametrize("symmetry", [False, True])
    def test_triangle_ramsey_threshold(self, symmetry):
        params = BookParams.of(1, 1)
        formula, vm = encode_books(5, params, symmetry_breaking=symmetry)
        model = solve(formula, solver_name="minisat22")
        assert model is not None
        assert is_ramsey_graph(model_to_graph(model, vm), params)
        formula, _ = encode_books(6, params, symmetry_breaking=symmetry)
        assert solve(formula, solver_name="minisat22") is None

    @pytest.mark.slow
    def test_book_two_threshold(self):
        params = BookParams.of(2, 2)
        formula, vm = encode_books(9, params, symmetry_breaking=True)
        model = solve(formula, solver_name="minisat22")
        assert model is not None
        assert is_ramsey_graph(model_to_graph(model, vm), params)
        formula, _ = encode_books(10, params, symmetry_breaking=True)
        assert solve(formula, solver_name="minisat22") is None

    def test_paley_nine_extends_to_model(self):
        params = BookParams.of(2, 2)
        g = paley_graph(9)
        assert is_ramsey_graph(g, params)
        assert has_extension(g, *encode_books(9, params))

    @pytest.mark.parametrize("n,satisfiable", [(5, True), (6, False)])
    def test_exhaustive_triangle_extensions(self, n, satisfiable):
        formula, vm = encode_books(n, BookParams.of(1, 1))
        assert any(has_extension(g, formula, vm) for g in all_graphs(n)) is satisfiable


class TestSymmetryBreaking:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
    def test_every_class_keeps_a_labeling(self, n):
        formula, vm = _symmetry_only(n)
        kept = {canonical_form(g).graph6 for g in all_graphs(n) if check_model(formula, graph_to_assignment(g, vm))}
        assert len(kept) == GRAPH_CLASSES[n]

    def test_path_labelings(self):
        formula, vm = _symmetry_only(4)
        accepted = [
            check_model(formula, graph_to_assignment(Graph.path(4).relabel(list(perm)), vm))
            for perm in itertools.permutations(range(4))
        ]
        assert any(accepted)
        assert not all(accepted)
        assert not check_model(formula, graph_to_assignment(Graph.path(4).relabel([2, 0, 3, 1]), vm))

    def test_satisfiability_unchanged_with_book_constraints(self):
        for n, params in [(5, BookParams.of(1, 1)), (6, BookParams.of(1, 1)), (6, BookParams.of(1, 2))]:
            plain, _ = encode_books(n, params)
            with_symmetry, _ = encode_books(n, params, symmetry_breaking=True)
            unsat = solve(plain, solver_name="minisat22") is None
            assert unsat == (solve(with_symmetry, solver_name="minisat22") is None)


class TestNaiveEncoding:
    def test_clause_count(self):
        formula = encode_naive(5, BookParams.of(1, 1))
        assert len(formula.clauses) == naive_clause_estimate(5, BookParams.of(1, 1)) == 60
        assert formula.num_vars == 10

    def test_five_cycle_satisfies(self):
        formula = encode_naive(5, BookParams.of(1, 1))
        assignment = [v if Graph.cycle(5).has_edge(i, j) else -v for v, (i, j) in enumerate(VarMap(5).pairs(), 1)]
        assert check_model(formula, assignment)

    @pytest.mark.parametrize("r,s", list(itertools.product(range(1, 4), repeat=2)))
    @pytest.mark.parametrize("n", range(1, 8))
    def test_agrees_with_book_encoding(self, n, r, s):
        params = BookParams.of(r, s)
        naive = solve(encode_naive(n, params), solver_name="minisat22")
        books, _ = encode_books(n, params)
        assert (naive is None) == (solve(books, solver_name="minisat22") is None)

    def test_size_guard(self):
        with pytest.raises(EncodingSizeError) as exc_info:
            encode_naive(20, BookParams.of(3, 3))
        assert exc_info.value.estimate == naive_clause_estimate(20, BookParams.of(3, 3))


class TestModels:
    def test_read_model_v_lines(self):
        text = "c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n"
        assert read_model(text) == [1, -2, 3, -4]

    def test_read_model_bare_literals(self):
        assert read_model("-1 2\n") == [-1, 2]

    def test_read_model_bad_token(self):
        with pytest.raises(ParseError) as exc_info:
            read_model("v 1 x 0\n")
        assert exc_info.value.line == 1

    def test_check_model_requires_complete_assignment(self):
        formula = CnfFormula(num_vars=3, clauses=[[1, 2]])
        with pytest.raises(ValidationError, match="does not cover"):
            check_model(formula, [1, 2])

    def test_model_to_graph_from_mapping(self):
        vm = VarMap(3)
        g = model_to_graph({1: True, 2: False, 3: True}, vm)
        assert list(g.edges()) == [(0, 1), (1, 2)]
