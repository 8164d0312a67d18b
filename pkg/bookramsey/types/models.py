"""Data models shared by the bookramsey modules and the CLI."""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .. import constants as C


class BookParams(BaseModel):
    """Page bounds (r, s): avoid B_r in the graph and B_s in its complement."""

    r: int = Field(description="Page bound on the graph side")
    s: int = Field(description="Page bound on the complement side")

    model_config = ConfigDict(frozen=True)

    @field_validator("r", "s")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("book sizes must be at least 1")
        return v

    @classmethod
    def of(cls, r: int, s: int) -> "BookParams":
        """Build params, raising the package's ``ValidationError`` on bad input."""
        from .exceptions import ValidationError

        if r < 1 or s < 1:
            raise ValidationError(f"Book sizes must be >= 1, got r={r}, s={s}", {"r": r, "s": s})
        return cls(r=r, s=s)

    def swapped(self) -> "BookParams":
        return BookParams(r=self.s, s=self.r)

    def __str__(self) -> str:
        return f"(B_{self.r}, B_{self.s})"


class Side(str, Enum):
    """Which colour class a book count refers to."""

    GRAPH = "graph"
    COMPLEMENT = "complement"


class FamilyResult(BaseModel):
    """One condition family of the 2-block difference-set test."""

    name: str = Field(description="Family label, e.g. D11 or D12_bar")
    side: Side = Field(description="Graph side or complement side")
    bound: int = Field(description="Strict upper bound (r or s)")
    max_value: int = Field(default=0, description="Largest common-neighbour count over the domain")
    violating_d: Optional[int] = Field(default=None, description="Smallest d reaching the bound")
    domain_size: int = Field(default=0, description="Number of differences d examined")

    @property
    def passed(self) -> bool:
        return self.max_value < self.bound


class ConditionReport(BaseModel):
    """Per-family maxima of the six difference-set conditions."""

    r: int
    s: int
    order: int = Field(description="Order of the underlying group (m for Z_m)")
    families: List[FamilyResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.families)

    @property
    def maxima(self) -> Tuple[int, ...]:
        return tuple(f.max_value for f in self.families)

    @property
    def graph_max(self) -> int:
        return max((f.max_value for f in self.families if f.side == Side.GRAPH), default=0)

    @property
    def complement_max(self) -> int:
        return max((f.max_value for f in self.families if f.side == Side.COMPLEMENT), default=0)

    def first_violation(self) -> Optional[FamilyResult]:
        for family in self.families:
            if not family.passed:
                return family
        return None

    def summary(self) -> str:
        graph = ",".join(str(f.max_value) for f in self.families if f.side == Side.GRAPH)
        comp = ",".join(str(f.max_value) for f in self.families if f.side == Side.COMPLEMENT)
        status = "PASS" if self.passed else "FAIL"
        return f"{status} maxima ({graph} | {comp}) bounds ({self.r} | {self.s})"


class VerificationReport(BaseModel):
    """Outcome of checking one witness graph against its claimed bound."""

    label: str
    r: int
    s: int
    claimed_bound: int
    vertex_count: int
    graph_max_pages: int = 0
    complement_max_pages: int = 0
    ramsey_ok: bool = False
    conditions: Optional[ConditionReport] = None
    conditions_agree: Optional[bool] = None
    violating_edge: Optional[Tuple[int, int]] = None
    violating_side: Optional[Side] = None
    graph6: Optional[str] = None
    error: Optional[str] = Field(default=None, description="Why the witness could not be built, if it could not")

    @property
    def expected_vertices(self) -> int:
        return self.claimed_bound - 1

    @property
    def vertex_count_ok(self) -> bool:
        return self.vertex_count == self.expected_vertices

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return False
        if not (self.vertex_count_ok and self.ramsey_ok):
            return False
        return self.conditions_agree is not False

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.error is not None:
            return f"{status} {self.label}: {self.error}"
        text = (
            f"{status} {self.label}: {self.vertex_count} vertices (expected {self.expected_vertices}), "
            f"max pages {self.graph_max_pages} | {self.complement_max_pages} vs bounds {self.r} | {self.s}"
        )
        if self.violating_edge is not None and self.violating_side is not None:
            u, v = self.violating_edge
            text += f"; violating {self.violating_side.value} edge ({u},{v})"
        return text


class BoundKind(str, Enum):
    """Kind of a registry bound."""

    LOWER = "lower"
    UPPER = "upper"
    EXACT = "exact"


class WitnessKind(str, Enum):
    """How a registry witness is referenced."""

    APPENDIX = "appendix"
    SPEC = "spec"
    CONSTRUCTION = "construction"
    GRAPH6 = "graph6"


class WitnessRef(BaseModel):
    """Reference to a witness graph, plus its graph6 and content hash once resolved."""

    kind: WitnessKind
    ref: str = Field(description="Appendix key, spec text, construction name or graph6")
    graph6: Optional[str] = Field(default=None, description="graph6 of the resolved witness")
    sha1: Optional[str] = Field(default=None, description="Content hash of the graph6 form")

    model_config = ConfigDict(populate_by_name=True)

    def label(self) -> str:
        return f"{self.kind.value}:{self.ref}"

    @classmethod
    def parse(cls, text: str) -> "WitnessRef":
        """Parse ``kind:ref`` (e.g. ``appendix:B5_B7``)."""
        kind, sep, ref = text.partition(":")
        if not sep or not ref:
            raise ValueError(f"Witness reference must look like kind:ref, got {text!r}")
        return cls(kind=WitnessKind(kind), ref=ref)


class BoundRecord(BaseModel):
    """One entry in the bounds registry."""

    r: int
    s: int
    kind: BoundKind
    value: int
    witness: Optional[WitnessRef] = None
    provenance: str = ""
    critical_graphs: Optional[int] = Field(default=None, description="Number of critical graphs, when enumerated")

    model_config = ConfigDict(extra="allow", populate_by_name=True)

    @field_validator("r", "s")
    @classmethod
    def validate_book_size(cls, v: int) -> int:
        if v < 1:
            raise ValueError("book sizes must be at least 1")
        return v

    @field_validator("value")
    @classmethod
    def validate_value(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Ramsey bounds are at least 2")
        return v

    @property
    def bounds_lower(self) -> bool:
        return self.kind in (BoundKind.LOWER, BoundKind.EXACT)

    @property
    def bounds_upper(self) -> bool:
        return self.kind in (BoundKind.UPPER, BoundKind.EXACT)


class BoundInterval(BaseModel):
    """Best known interval for R(B_r, B_s)."""

    r: int
    s: int
    lower: Optional[int] = None
    upper: Optional[int] = None
    lower_provenance: str = ""
    upper_provenance: str = ""

    @property
    def exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def format(self) -> str:
        lo = "-" if self.lower is None else str(self.lower)
        if self.upper is None:
            return f"R(B_{self.r},B_{self.s}) in [{lo}, inf)"
        return f"R(B_{self.r},B_{self.s}) in [{lo}, {self.upper}]"


class IpOptions(BaseModel):
    """Ansatz switches for the block-circulant integer program."""

    complement_ansatz: bool = Field(default=False, description="Force D22 to be the complement of D11")
    d11_eq_d12: bool = Field(default=False, description="Force D11 = D12")
    pinned: Tuple[int, ...] = Field(default=(), description="Elements forced into D11")

    model_config = ConfigDict(frozen=True)

    @field_validator("pinned", mode="before")
    @classmethod
    def normalize_pinned(cls, v: Any) -> Tuple[int, ...]:
        values = tuple(sorted({int(x) for x in (v or ())}))
        if any(x < 1 for x in values):
            raise ValueError("pinned elements must be nonzero residues")
        return values


class EnumerationStats(BaseModel):
    """Search-tree statistics of an enumeration run."""

    nodes: int = 0
    candidates: int = 0
    accepted: int = 0
    elapsed_seconds: float = 0.0
    workers: int = 1
    level_counts: Dict[int, int] = Field(default_factory=dict)


class EnumerationResult(BaseModel):
    """Isomorphism-class representatives of Ramsey (B_r, B_s, n) graphs."""

    n: int
    r: int
    s: int
    graphs: List[str] = Field(default_factory=list, description="Canonical graph6 strings, sorted")
    stats: EnumerationStats = Field(default_factory=EnumerationStats)

    @property
    def count(self) -> int:
        return len(self.graphs)


class SmallcaseResult(BaseModel):
    """Exact small Ramsey number with the size of its critical family."""

    r: int
    s: int
    value: int
    critical_count: int
    level_counts: Dict[int, int] = Field(default_factory=dict)
    critical_graphs: List[str] = Field(default_factory=list)
    elapsed_seconds: float = 0.0


class ResidueClass(str, Enum):
    RESIDUE = "Q"
    NONRESIDUE = "N"


class ResidueDifferenceRow(BaseModel):
    """Observed and closed-form difference counts for one nonzero d."""

    d: int
    d_class: ResidueClass
    qq: int
    nn: int
    qn: int
    expected_qq: int
    expected_nn: int
    expected_qn: int

    @property
    def holds(self) -> bool:
        return (self.qq, self.nn, self.qn) == (self.expected_qq, self.expected_nn, self.expected_qn)


class RunConfig(BaseModel):
    """Runtime settings, resolved from the environment and CLI flags."""

    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: str = Field(default="console", description="Log renderer: json, console or simple")
    workers: int = Field(default=C.DEFAULT_WORKERS, description="Worker processes for enumeration")
    budget_seconds: float = Field(default=0.0, description="Enumeration wall-clock budget in seconds (0 = unlimited)")
    registry_path: str = Field(default=C.DEFAULT_REGISTRY_FILENAME, description="User bounds registry file")
    canonical_max_n: int = Field(default=C.CANONICAL_MAX_N, description="Largest graph accepted by canonical labeling")
    naive_max_n: int = Field(default=C.NAIVE_MAX_N, description="Largest n accepted by the naive SAT encoding")
    books_max_n: int = Field(default=C.BOOKS_MAX_N, description="Largest n accepted by the book SAT encoding")
    checkpoint_every: int = Field(default=C.CHECKPOINT_EVERY, description="Search nodes between budget checkpoints")

    model_config = ConfigDict(extra="allow", populate_by_name=True)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v.lower() not in ("json", "console", "simple"):
            raise ValueError("Log format must be one of: json, console, simple")
        return v.lower()

    @property
    def budget(self) -> Optional[float]:
        """Budget in seconds, or ``None`` when unlimited."""
        return self.budget_seconds if self.budget_seconds > 0 else None
