"""Tests for the bundled witnesses and their verification."""

import json

import pytest

from bookramsey.circulant import BlockCirculantSpec
from bookramsey.graphs import Graph, format_adjacency_text, to_graph6
from bookramsey.types.exceptions import BookRamseyError, ParseError, ValidationError
from bookramsey.types.models import BookParams, WitnessKind, WitnessRef
from bookramsey.witness import (
    find_entry,
    load_appendix,
    resolve_witness,
    verify_appendix,
    verify_bound,
    verify_graph,
    verify_sets,
    verify_spec,
    verify_witness,
)

APPENDIX_KEYS = [entry.key for entry in load_appendix()]


def _write_appendix(directory, entries):
    path = directory / "appendix.json"
    path.write_text(json.dumps({"entries": entries}), encoding="utf-8")
    return path


class TestAppendix:
    def test_entry_count_and_groups(self):
        entries = load_appendix()
        assert len(entries) == 28
        assert sum(1 for e in entries if e.matrix is not None) == 3
        assert {e.group for e in entries} <= {"diagonal", "adjacent", "gap_two", "explicit"}

    def test_find_by_key_and_pair(self):
        entry = find_entry("b5_b7")
        assert entry.spec is not None and entry.spec.m == 12
        assert entry.claim == "R(B_5,B_7) >= 25"
        assert find_entry("5,7") == entry

    def test_unknown_entry(self):
        with pytest.raises(BookRamseyError, match="No appendix entry"):
            find_entry("b99_b99")

    def test_every_bound_matches_its_vertex_count(self):
        for entry in load_appendix():
            assert entry.graph().n == entry.bound - 1, entry.key

    def test_loaded_list_is_a_copy(self):
        entries = load_appendix()
        entries.clear()
        assert len(load_appendix()) == 28

    def test_matrix_entry_from_custom_file(self, temp_dir):
        (temp_dir / "c5.txt").write_text(format_adjacency_text(Graph.cycle(5)), encoding="utf-8")
        entry = {"key": "c5", "r": 1, "s": 1, "bound": 6, "kind": "matrix", "file": "c5.txt"}
        path = _write_appendix(temp_dir, [entry])
        (entry,) = load_appendix(path)
        assert entry.matrix == Graph.cycle(5)
        assert verify_bound(entry).passed

    def test_missing_field(self, temp_dir):
        entry = {"key": "bad", "r": 2, "s": 3, "bound": 11, "kind": "spec", "d11": [1], "d12": [0]}
        path = _write_appendix(temp_dir, [entry])
        with pytest.raises(ParseError, match="bad") as exc_info:
            load_appendix(path)
        assert exc_info.value.line == 0

    def test_unknown_kind(self, temp_dir):
        path = _write_appendix(temp_dir, [{"key": "odd", "r": 2, "s": 3, "bound": 11, "kind": "picture"}])
        with pytest.raises(ParseError, match="unknown kind"):
            load_appendix(path)

    def test_invalid_difference_set(self, temp_dir):
        row = {"key": "z", "r": 2, "s": 3, "bound": 11, "kind": "spec", "m": 5, "d11": [0, 1, 4], "d12": [0]}
        with pytest.raises(ParseError):
            load_appendix(_write_appendix(temp_dir, [row]))

    def test_invalid_json(self, temp_dir):
        path = temp_dir / "appendix.json"
        path.write_text('{"entries": [', encoding="utf-8")
        with pytest.raises(ParseError, match="not valid JSON"):
            load_appendix(path)


class TestVerification:
    @pytest.mark.parametrize("key", APPENDIX_KEYS)
    def test_bundled_witness_passes(self, key):
        report = verify_bound(find_entry(key))
        assert report.passed, report.summary()
        if find_entry(key).spec is not None:
            assert report.conditions_agree is True

    def test_verify_appendix_reports_every_entry(self):
        reports = verify_appendix(load_appendix()[:3])
        assert [r.label for r in reports] == APPENDIX_KEYS[:3]
        assert all(r.passed for r in reports)

    def test_verify_spec_defaults_bound(self, b5_b7_spec):
        report = verify_spec(b5_b7_spec, BookParams.of(5, 7))
        assert report.claimed_bound == 25
        assert report.passed
        assert report.conditions.maxima == (4, 4, 4, 6, 6, 6)

    def test_verify_sets_invalid(self):
        report = verify_sets(5, [0, 1, 4], [0], BookParams.of(2, 3))
        assert not report.passed
        assert "must not contain 0" in report.error
        assert report.summary().startswith("FAIL spec:")

    def test_verify_sets_reports_violation(self):
        report = verify_sets(
            12, [1, 2, 4, 5, 7, 8, 10, 11], [0, 3, 4, 6, 11], BookParams.of(5, 7), d22=[1, 3, 6, 9, 11]
        )
        assert not report.passed
        assert report.violating_edge is not None
        assert report.conditions_agree is True
        assert "violating" in report.summary()

    def test_wrong_vertex_count_fails(self):
        report = verify_graph(Graph.cycle(5), BookParams.of(1, 1), 7)
        assert report.ramsey_ok
        assert not report.vertex_count_ok
        assert not report.passed


class TestWitnessReferences:
    def test_paley_book_construction(self):
        report = verify_witness(WitnessRef.parse("construction:paley_book:13"), BookParams.of(6, 7), 27)
        assert report.passed
        assert report.vertex_count == 26
        assert report.label == "construction:paley_book:13"

    def test_paley_construction(self):
        assert verify_witness(WitnessRef.parse("construction:paley:13"), BookParams.of(3, 3), 14).passed

    def test_complete_bipartite_construction(self):
        ref = WitnessRef.parse("construction:complete_bipartite:14,14")
        assert resolve_witness(ref).n == 28
        assert verify_witness(ref, BookParams.of(2, 13), 29).passed

    def test_graph6_reference(self):
        ref = WitnessRef(kind=WitnessKind.GRAPH6, ref=to_graph6(Graph.cycle(5)))
        report = verify_witness(ref, BookParams.of(1, 1), 6)
        assert report.passed
        assert report.graph6 == ref.ref

    def test_spec_reference_checks_conditions(self):
        ref = WitnessRef.parse("spec:12; D11={2,4,5,7,8,10}; D12={0,3,4,6,11}")
        report = verify_witness(ref, BookParams.of(5, 7), 25)
        assert report.passed
        assert report.conditions is not None

    def test_appendix_reference(self):
        report = verify_witness(WitnessRef.parse("appendix:b5_b7"), BookParams.of(5, 7), 25)
        assert report.passed
        assert report.conditions_agree is True

    def test_unknown_construction(self):
        ref = WitnessRef.parse("construction:petersen:10")
        with pytest.raises(ValidationError, match="Unknown construction"):
            resolve_witness(ref)
        report = verify_witness(ref, BookParams.of(2, 2), 11)
        assert not report.passed
        assert "Unknown construction" in report.error

    def test_bad_construction_argument(self):
        with pytest.raises(ValidationError, match="Bad construction argument"):
            resolve_witness(WitnessRef.parse("construction:paley:x"))

    def test_unknown_appendix_key(self):
        report = verify_witness(WitnessRef.parse("appendix:b1_b1"), BookParams.of(1, 1), 6)
        assert not report.passed

    def test_spec_matches_block_sets(self, b5_b7_spec):
        entry = find_entry("b5_b7")
        assert entry.spec == b5_b7_spec
        assert isinstance(entry.spec, BlockCirculantSpec)
