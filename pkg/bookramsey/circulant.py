"""Difference calculus and 2-block-circulant graphs.

A 2-block-circulant graph on ``2m`` vertices has blocks ``V1 = {0..m-1}`` and
``V2 = {m..2m-1}``, both labelled by ``Z_m``. It is fully described by three
difference sets: ``D11`` and ``D22`` (the circulant diagonal blocks) and
``D12`` (the off-diagonal block). Common-neighbour counts of such graphs are
sums of ``delta``/``sigma`` counts, which makes the book conditions checkable
without building the graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Protocol, Sequence, Tuple

import numpy as np
import structlog

from .graphs import Graph
from .types.exceptions import ParseError, ValidationError
from .types.models import BookParams, ConditionReport, FamilyResult, Side

logger = structlog.get_logger(__name__)

_SET_PATTERN = re.compile(r"^\s*(D11|D12|D22)\s*=\s*\{([^}]*)\}\s*$")


class AbelianGroup(Protocol):
    """Finite abelian group whose elements are the indices ``0..order-1`` (0 is the identity)."""

    @property
    def order(self) -> int: ...

    def neg(self, x: int) -> int: ...

    def difference_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray: ...

    def sum_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray: ...


@dataclass(frozen=True)
class CyclicGroup:
    """The additive group ``Z_m``."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValidationError(f"Modulus must be positive, got {self.m}")

    @property
    def order(self) -> int:
        return self.m

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.m

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.m

    def neg(self, x: int) -> int:
        return (-x) % self.m

    def difference_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
        """``counts[d] = |{(x, y) : x - y = d}|`` for every ``d`` in ``Z_m``."""
        return _pair_counts(xs, ys, self.m, -1)

    def sum_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
        return _pair_counts(xs, ys, self.m, 1)


def _pair_counts(xs: Sequence[int], ys: Sequence[int], m: int, sign: int) -> np.ndarray:
    if not len(xs) or not len(ys):
        return np.zeros(m, dtype=np.int64)
    a = np.asarray(xs, dtype=np.int64)[:, None]
    b = np.asarray(ys, dtype=np.int64)[None, :]
    return np.bincount(((a + sign * b) % m).ravel(), minlength=m)


def _check_elements(values: Iterable[int], m: int, name: str) -> List[int]:
    out = []
    for x in values:
        if not 0 <= x < m:
            raise ValidationError(f"Element {x} of {name} is outside Z_{m}", {"element": x, "m": m})
        out.append(x)
    return out


def delta(xs: Iterable[int], ys: Iterable[int], d: int, m: int) -> int:
    """Number of pairs ``(x, y)`` in ``X x Y`` with ``x - y = d`` in ``Z_m``."""
    a = _check_elements(xs, m, "X")
    b = _check_elements(ys, m, "Y")
    return int(CyclicGroup(m).difference_counts(a, b)[d % m])


def sigma(xs: Iterable[int], ys: Iterable[int], d: int, m: int) -> int:
    """Number of pairs ``(x, y)`` in ``X x Y`` with ``x + y = d`` in ``Z_m``."""
    a = _check_elements(xs, m, "X")
    b = _check_elements(ys, m, "Y")
    return int(CyclicGroup(m).sum_counts(a, b)[d % m])


def negate(xs: Iterable[int], m: int) -> Tuple[int, ...]:
    return tuple(sorted({(-x) % m for x in xs}))


def _normalize(values: Iterable[int], m: int) -> Tuple[int, ...]:
    return tuple(sorted({int(x) % m for x in values}))


def _complement(values: Sequence[int], m: int, include_zero: bool) -> Tuple[int, ...]:
    present = set(values)
    start = 0 if include_zero else 1
    return tuple(x for x in range(start, m) if x not in present)


def check_difference_set(group: AbelianGroup, values: Sequence[int], name: str) -> None:
    """Reject a diagonal-block set that contains 0 or is not closed under negation."""
    present = set(values)
    if 0 in present:
        raise ValidationError(f"{name} must not contain 0", {"set": name})
    for x in values:
        if group.neg(x) not in present:
            raise ValidationError(
                f"{name} is not closed under negation: {x} present but {group.neg(x)} missing",
                {"set": name, "element": x},
            )


@dataclass(frozen=True)
class BlockCirculantSpec:
    """``(m, D11, D12, D22)``; sets are reduced mod ``m``, sorted and duplicate-free."""

    m: int
    d11: Tuple[int, ...] = ()
    d12: Tuple[int, ...] = ()
    d22: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValidationError(f"Block size must be positive, got {self.m}")
        for name in ("d11", "d12", "d22"):
            object.__setattr__(self, name, _normalize(getattr(self, name), self.m))
        group = CyclicGroup(self.m)
        check_difference_set(group, self.d11, "D11")
        check_difference_set(group, self.d22, "D22")

    @classmethod
    def from_sets(
        cls,
        m: int,
        d11: Iterable[int],
        d12: Iterable[int],
        d22: Optional[Iterable[int]] = None,
    ) -> "BlockCirculantSpec":
        """Build a spec; ``d22=None`` means the complement of ``D11`` in ``Z_m \\ {0}``."""
        d11 = _normalize(d11, m)
        if d22 is None:
            d22 = _complement(d11, m, include_zero=False)
        return cls(m, tuple(d11), tuple(d12), tuple(d22))

    @property
    def vertex_count(self) -> int:
        return 2 * self.m

    @property
    def uses_complement_convention(self) -> bool:
        return self.d22 == _complement(self.d11, self.m, include_zero=False)

    @cached_property
    def _counts(self) -> dict:
        group = CyclicGroup(self.m)
        return {
            "11": group.difference_counts(self.d11, self.d11),
            "22": group.difference_counts(self.d22, self.d22),
            "12": group.difference_counts(self.d12, self.d12),
            "cross_sigma": group.sum_counts(self.d11, self.d12),
            "cross_delta": group.difference_counts(self.d12, self.d22),
        }


def expand(spec: BlockCirculantSpec) -> Graph:
    """Explicit graph on ``2m`` vertices."""
    m = spec.m
    rows = [0] * (2 * m)
    for u in range(m):
        mask = 0
        for d in spec.d11:
            mask |= 1 << ((u + d) % m)
        for d in spec.d12:
            mask |= 1 << (m + (u + d) % m)
        rows[u] = mask
    for j in range(m):
        mask = 0
        for d in spec.d22:
            mask |= 1 << (m + (j + d) % m)
        for d in spec.d12:
            mask |= 1 << ((j - d) % m)
        rows[m + j] = mask
    return Graph(2 * m, tuple(rows))


def common_neighbors_formula(spec: BlockCirculantSpec, u: int, v: int) -> int:
    """``|Γ(u, v)|`` from the difference counts alone, without expanding the graph."""
    m = spec.m
    for w in (u, v):
        if not 0 <= w < 2 * m:
            raise ValidationError(f"Vertex {w} out of range for 2m={2 * m}", {"vertex": w})
    if u == v:
        raise ValidationError(f"Common neighbours need two distinct vertices, got {u} twice")
    if u > v:
        u, v = v, u
    counts = spec._counts
    if v < m:
        d = (v - u) % m
        return int(counts["11"][d] + counts["12"][d])
    if u >= m:
        d = (v - u) % m
        return int(counts["22"][d] + counts["12"][d])
    d = (v - m - u) % m
    return int(counts["cross_sigma"][d] + counts["cross_delta"][d])


def complement_spec(spec: BlockCirculantSpec) -> BlockCirculantSpec:
    m = spec.m
    return BlockCirculantSpec(
        m,
        _complement(spec.d11, m, include_zero=False),
        _complement(spec.d12, m, include_zero=True),
        _complement(spec.d22, m, include_zero=False),
    )


def _family(
    name: str,
    side: Side,
    bound: int,
    domain: Sequence[int],
    values: np.ndarray,
) -> FamilyResult:
    result = FamilyResult(name=name, side=side, bound=bound, domain_size=len(domain))
    for d in sorted(domain):
        value = int(values[d])
        if value > result.max_value:
            result.max_value = value
        if value >= bound and result.violating_d is None:
            result.violating_d = d
    return result


def check_group_conditions(
    group: AbelianGroup,
    d11: Sequence[int],
    d12: Sequence[int],
    d22: Sequence[int],
    params: BookParams,
) -> ConditionReport:
    """Evaluate the six difference-set families of a 2-block Cayley graph.

    The first three families bound common neighbours of edges inside ``V1``,
    inside ``V2`` and across the blocks by ``r``; the last three do the same
    for the complement sets against ``s``.
    """
    order = group.order
    check_difference_set(group, d11, "D11")
    check_difference_set(group, d22, "D22")
    families: List[FamilyResult] = []
    sides = (
        (Side.GRAPH, params.r, tuple(d11), tuple(d12), tuple(d22), ""),
        (
            Side.COMPLEMENT,
            params.s,
            _complement(sorted(d11), order, include_zero=False),
            _complement(sorted(d12), order, include_zero=True),
            _complement(sorted(d22), order, include_zero=False),
            "_bar",
        ),
    )
    for side, bound, a, b, c, suffix in sides:
        c12 = group.difference_counts(b, b)
        families.append(_family(f"D11{suffix}", side, bound, a, group.difference_counts(a, a) + c12))
        families.append(_family(f"D22{suffix}", side, bound, c, group.difference_counts(c, c) + c12))
        cross = group.sum_counts(a, b) + group.difference_counts(b, c)
        families.append(_family(f"D12{suffix}", side, bound, b, cross))

    report = ConditionReport(r=params.r, s=params.s, order=order, families=families)
    logger.debug("Checked book conditions", order=order, passed=report.passed, maxima=report.maxima)
    return report


def check_book_conditions(spec: BlockCirculantSpec, params: BookParams) -> ConditionReport:
    return check_group_conditions(CyclicGroup(spec.m), spec.d11, spec.d12, spec.d22, params)


# -- spec text ------------------------------------------------------------


def parse_spec_text(text: str) -> BlockCirculantSpec:
    """Parse ``m; D11={...}; D12={...}[; D22={...}]``.

    ``m`` may be written bare or as ``m=12``. Without ``D22`` the complement
    convention applies.
    """
    parts = [p for p in text.strip().split(";") if p.strip()]
    if not parts:
        raise ParseError("Empty spec text", position=0)
    head = parts[0].strip()
    if head.lower().startswith("m"):
        head = head[1:].lstrip(" =")
    try:
        m = int(head)
    except ValueError as exc:
        raise ParseError(f"Invalid block size {parts[0].strip()!r}", position=0) from exc

    sets: dict = {}
    offset = len(parts[0]) + 1
    for part in parts[1:]:
        match = _SET_PATTERN.match(part)
        if match is None:
            raise ParseError(f"Malformed set clause {part.strip()!r}", position=offset)
        name, body = match.group(1), match.group(2)
        if name in sets:
            raise ParseError(f"Duplicate {name} clause", position=offset)
        try:
            sets[name] = [int(tok) for tok in body.replace(",", " ").split()]
        except ValueError as exc:
            raise ParseError(f"Non-integer element in {name}", position=offset) from exc
        offset += len(part) + 1

    for required in ("D11", "D12"):
        if required not in sets:
            raise ParseError(f"Spec text is missing {required}")
    return BlockCirculantSpec.from_sets(m, sets["D11"], sets["D12"], sets.get("D22"))


def _format_set(values: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in values) + "}"


def format_spec_text(spec: BlockCirculantSpec, explicit_d22: bool = False) -> str:
    text = f"{spec.m}; D11={_format_set(spec.d11)}; D12={_format_set(spec.d12)}"
    if explicit_d22 or not spec.uses_complement_convention:
        text += f"; D22={_format_set(spec.d22)}"
    return text
