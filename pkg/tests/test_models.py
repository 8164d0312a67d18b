"""Tests for the shared data models."""

import pydantic
import pytest

from bookramsey.types.exceptions import ValidationError
from bookramsey.types.models import (
    BookParams,
    BoundInterval,
    BoundKind,
    BoundRecord,
    ConditionReport,
    EnumerationResult,
    FamilyResult,
    IpOptions,
    RunConfig,
    Side,
    VerificationReport,
    WitnessKind,
    WitnessRef,
)


class TestBookParams:
    def test_of(self):
        params = BookParams.of(5, 7)
        assert (params.r, params.s) == (5, 7)
        assert str(params) == "(B_5, B_7)"
        assert params.swapped() == BookParams.of(7, 5)

    def test_of_rejects_zero(self):
        with pytest.raises(ValidationError):
            BookParams.of(0, 3)

    def test_frozen(self):
        with pytest.raises(pydantic.ValidationError):
            BookParams.of(1, 1).r = 2


class TestConditionReport:
    def _report(self, maxima, r=3, s=3):
        names = ["D11", "D22", "D12", "D11_bar", "D22_bar", "D12_bar"]
        families = [
            FamilyResult(name=name, side=Side.GRAPH if i < 3 else Side.COMPLEMENT, bound=r if i < 3 else s, max_value=v)
            for i, (name, v) in enumerate(zip(names, maxima))
        ]
        return ConditionReport(r=r, s=s, order=5, families=families)

    def test_passing(self):
        report = self._report((1, 2, 2, 0, 2, 1))
        assert report.passed
        assert report.first_violation() is None
        assert (report.graph_max, report.complement_max) == (2, 2)
        assert report.summary() == "PASS maxima (1,2,2 | 0,2,1) bounds (3 | 3)"

    def test_first_violation_in_family_order(self):
        report = self._report((1, 2, 2, 3, 2, 4))
        assert not report.passed
        assert report.first_violation().name == "D11_bar"
        assert report.summary().startswith("FAIL")


class TestVerificationReport:
    def test_vertex_count_must_match_bound(self):
        report = VerificationReport(label="g", r=1, s=1, claimed_bound=6, vertex_count=5, ramsey_ok=True)
        assert report.passed
        assert report.model_copy(update={"claimed_bound": 7}).passed is False

    def test_disagreeing_conditions_fail(self):
        report = VerificationReport(
            label="g", r=1, s=1, claimed_bound=6, vertex_count=5, ramsey_ok=True, conditions_agree=False
        )
        assert not report.passed

    def test_error_summary(self):
        report = VerificationReport(label="g", r=1, s=1, claimed_bound=6, vertex_count=0, error="bad input")
        assert report.summary() == "FAIL g: bad input"

    def test_violation_summary(self):
        report = VerificationReport(
            label="g",
            r=1,
            s=1,
            claimed_bound=7,
            vertex_count=6,
            graph_max_pages=0,
            complement_max_pages=1,
            violating_edge=(0, 2),
            violating_side=Side.COMPLEMENT,
        )
        assert report.summary() == (
            "FAIL g: 6 vertices (expected 6), max pages 0 | 1 vs bounds 1 | 1; violating complement edge (0,2)"
        )


class TestRegistryModels:
    def test_witness_ref_parse(self):
        ref = WitnessRef.parse("appendix:b5_b7")
        assert ref.kind == WitnessKind.APPENDIX
        assert ref.label() == "appendix:b5_b7"

    def test_witness_ref_keeps_colons_in_ref(self):
        assert WitnessRef.parse("construction:paley:13").ref == "paley:13"

    @pytest.mark.parametrize("text", ["appendix", "appendix:", "drawing:x"])
    def test_witness_ref_rejects(self, text):
        with pytest.raises(ValueError):
            WitnessRef.parse(text)

    def test_record_kinds(self):
        exact = BoundRecord(r=1, s=1, kind=BoundKind.EXACT, value=6)
        assert exact.bounds_lower and exact.bounds_upper
        upper = BoundRecord(r=1, s=1, kind="upper", value=6)
        assert upper.bounds_upper and not upper.bounds_lower

    def test_record_validation(self):
        with pytest.raises(pydantic.ValidationError):
            BoundRecord(r=0, s=1, kind=BoundKind.LOWER, value=6)
        with pytest.raises(pydantic.ValidationError):
            BoundRecord(r=1, s=1, kind=BoundKind.LOWER, value=1)

    def test_interval_format(self):
        assert BoundInterval(r=2, s=3, lower=11, upper=11).format() == "R(B_2,B_3) in [11, 11]"
        assert BoundInterval(r=2, s=3).format() == "R(B_2,B_3) in [-, inf)"
        assert BoundInterval(r=2, s=3, lower=11, upper=11).exact


class TestIpOptions:
    def test_pins_sorted_and_deduplicated(self):
        assert IpOptions(pinned=[4, 1, 4]).pinned == (1, 4)

    def test_pins_must_be_nonzero(self):
        with pytest.raises(pydantic.ValidationError):
            IpOptions(pinned=(0,))


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.workers == 1
        assert config.budget is None
        assert config.log_level == "WARNING"

    def test_budget(self):
        assert RunConfig(budget_seconds=2.5).budget == 2.5

    def test_level_and_format_normalized(self):
        config = RunConfig(log_level="debug", log_format="JSON")
        assert (config.log_level, config.log_format) == ("DEBUG", "json")

    def test_invalid_level(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig(log_level="LOUD")


def test_enumeration_result_count():
    assert EnumerationResult(n=5, r=1, s=1, graphs=["DUW"]).count == 1
