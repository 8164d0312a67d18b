"""Finite fields GF(p^k), quadratic residues and Paley-type constructions.

Field elements are represented by their index ``sum(c_i * p**i)`` where
``c_0..c_{k-1}`` are the coefficients of the element as a polynomial of
degree < k, lowest degree first. Addition is digitwise mod p; multiplication
goes through sympy's dense GF(p)[x] arithmetic modulo the field's irreducible
polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from sympy import factorint
from sympy.ntheory.primetest import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem

from .circulant import AbelianGroup, check_difference_set, check_group_conditions
from .constants import FIELD_MAX_ORDER
from .graphs import Graph
from .types.exceptions import ValidationError
from .types.models import BookParams, ConditionReport, ResidueClass, ResidueDifferenceRow

logger = structlog.get_logger(__name__)


def factor_prime_power(q: int) -> Tuple[int, int]:
    """Return ``(p, k)`` with ``q = p**k``."""
    if q < 2:
        raise ValidationError(f"{q} is not a prime power", {"q": q})
    factors = factorint(q)
    if len(factors) != 1:
        raise ValidationError(
            f"{q} is not a prime power",
            {"q": q, "factors": {int(a): int(b) for a, b in factors.items()}},
        )
    ((p, k),) = factors.items()
    return int(p), int(k)


def _high_first(coeffs: Sequence[int]) -> List[int]:
    """Low-first coefficient vector to sympy's stripped high-first list."""
    out = list(reversed([int(c) for c in coeffs]))
    while out and out[0] == 0:
        out.pop(0)
    return out


class FiniteField:
    """GF(p^k) with an explicit monic irreducible modulus.

    Attributes:
        p: Characteristic.
        k: Extension degree.
        modulus: Low-first coefficients ``(c_0, ..., c_{k-1})`` of the monic
            modulus ``x^k + c_{k-1} x^{k-1} + ... + c_0``.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(int(c) for c in modulus)
        self.q = p**k
        self._modulus_high = [1] + list(reversed(self.modulus))
        self._powers = np.array([p**i for i in range(k)], dtype=np.int64)

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k}, modulus={self.modulus})"

    @property
    def order(self) -> int:
        return self.q

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[x]`` is the low-first coefficient vector of element ``x``."""
        idx = np.arange(self.q, dtype=np.int64)
        return (idx[:, None] // self._powers[None, :]) % self.p

    def coeffs(self, x: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.digits[x])

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        padded = list(coeffs) + [0] * (self.k - len(coeffs))
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(padded[: self.k])))

    def _combine(self, xs: np.ndarray, ys: np.ndarray, sign: int) -> np.ndarray:
        digits = (self.digits[xs] + sign * self.digits[ys]) % self.p
        return digits @ self._powers

    def add(self, x: int, y: int) -> int:
        return int(self._combine(np.array([x]), np.array([y]), 1)[0])

    def sub(self, x: int, y: int) -> int:
        return int(self._combine(np.array([x]), np.array([y]), -1)[0])

    def neg(self, x: int) -> int:
        return int(((-self.digits[x]) % self.p) @ self._powers)

    def mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x * y) % self.p
        product = gf_mul(_high_first(self.coeffs(x)), _high_first(self.coeffs(y)), self.p, ZZ)
        remainder = gf_rem(product, self._modulus_high, self.p, ZZ)
        return self.from_coeffs(list(reversed([int(c) for c in remainder])))

    def power(self, x: int, e: int) -> int:
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, x: int) -> int:
        if x == 0:
            raise ValidationError("Zero has no multiplicative inverse")
        if self.k == 1:
            return pow(x, -1, self.p)
        s, _, _ = gf_gcdex(_high_first(self.coeffs(x)), self._modulus_high, self.p, ZZ)
        return self.from_coeffs(list(reversed([int(c) for c in s])))

    def difference_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
        """``counts[d] = |{(x, y) : x - y = d}|`` for every element ``d``."""
        return self._pair_counts(xs, ys, -1)

    def sum_counts(self, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
        return self._pair_counts(xs, ys, 1)

    def _pair_counts(self, xs: Sequence[int], ys: Sequence[int], sign: int) -> np.ndarray:
        if not len(xs) or not len(ys):
            return np.zeros(self.q, dtype=np.int64)
        a = np.repeat(np.asarray(xs, dtype=np.int64), len(ys))
        b = np.tile(np.asarray(ys, dtype=np.int64), len(xs))
        return np.bincount(self._combine(a, b, sign), minlength=self.q)

    def element(self, x: int) -> "FieldElement":
        return FieldElement(self, x)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, x) for x in range(self.q)]


@dataclass(frozen=True)
class FieldElement:
    """Value-style wrapper for arithmetic on one field element."""

    field: FiniteField
    index: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _other(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValidationError("Cannot combine elements of different fields")
            return other.index
        return self.field.from_coeffs([other % self.field.p])

    def __add__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.field, self.field.add(self.index, self._other(other)))

    def __sub__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.field, self.field.sub(self.index, self._other(other)))

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        return FieldElement(self.field, self.field.mul(self.index, self._other(other)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return FieldElement(self.field, self.field.power(self.field.inverse(self.index), -e))
        return FieldElement(self.field, self.field.power(self.index, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inverse(self.index))

    def is_zero(self) -> bool:
        return self.index == 0


def make_field(p: int, k: int, modulus: Optional[Sequence[int]] = None) -> FiniteField:
    """Build GF(p^k).

    Without ``modulus`` the lexicographically smallest monic irreducible
    polynomial of degree ``k`` is used, comparing coefficients from the
    constant term up. For ``k = 1`` that is ``x`` and the field is ``Z_p``.
    """
    if not isprime(p):
        raise ValidationError(f"Characteristic must be prime, got {p}", {"p": p})
    if k < 1:
        raise ValidationError(f"Extension degree must be at least 1, got {k}", {"k": k})
    if p**k > FIELD_MAX_ORDER:
        raise ValidationError(f"Field order {p}^{k} exceeds {FIELD_MAX_ORDER}", {"q": p**k})

    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != k or any(not 0 <= c < p for c in modulus):
            raise ValidationError(f"Modulus needs {k} low-first coefficients in [0, {p})", {"modulus": modulus})
        if not gf_irreducible_p([1] + list(reversed(modulus)), p, ZZ):
            raise ValidationError(f"Modulus {modulus} is reducible over F_{p}", {"modulus": modulus})
        return FiniteField(p, k, modulus)

    for coeffs in itertools.product(range(p), repeat=k):
        if gf_irreducible_p([1] + list(reversed(coeffs)), p, ZZ):
            logger.debug("Selected field modulus", p=p, k=k, modulus=coeffs)
            return FiniteField(p, k, coeffs)
    raise ValidationError(f"No irreducible polynomial of degree {k} over F_{p}")


def field_of_order(q: int) -> FiniteField:
    p, k = factor_prime_power(q)
    return make_field(p, k)


def residues(f: FiniteField) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Nonzero squares ``Q`` and non-squares ``N`` of an odd-order field."""
    if f.p == 2:
        raise ValidationError(f"Quadratic residues need odd q, got {f.q}", {"q": f.q})
    squares = {f.mul(x, x) for x in range(1, f.q)}
    q_set = tuple(sorted(squares))
    n_set = tuple(x for x in range(1, f.q) if x not in squares)
    return q_set, n_set


def euler_class(f: FiniteField, x: int) -> int:
    """``x^((q-1)/2)`` as ``+1`` or ``-1`` for nonzero ``x``."""
    if x == 0:
        raise ValidationError("Euler's criterion is undefined for 0")
    value = f.power(x, (f.q - 1) // 2)
    if value == 1:
        return 1
    if value == f.neg(1):
        return -1
    raise ValidationError(f"x^((q-1)/2) is neither 1 nor -1 for x={x}")


def residue_difference_counts(f: FiniteField, strict: bool = True) -> List[ResidueDifferenceRow]:
    """Count ``Δ(Q,Q,d)``, ``Δ(N,N,d)`` and ``Δ(Q,N,d)`` for every nonzero ``d``.

    With ``strict`` the counts must equal the closed forms: ``(q-1)/4`` minus
    one for ``Δ(Q,Q,d)`` when ``d`` is a residue and for ``Δ(N,N,d)`` when it
    is not, and ``(q-1)/4`` everywhere else.
    """
    if f.q % 4 != 1:
        raise ValidationError(f"Residue difference counts need q = 1 mod 4, got {f.q}", {"q": f.q})
    q_set, n_set = residues(f)
    qq = f.difference_counts(q_set, q_set)
    nn = f.difference_counts(n_set, n_set)
    qn = f.difference_counts(q_set, n_set)
    quarter = (f.q - 1) // 4
    is_residue = set(q_set)

    rows = []
    for d in range(1, f.q):
        in_q = d in is_residue
        row = ResidueDifferenceRow(
            d=d,
            d_class=ResidueClass.RESIDUE if in_q else ResidueClass.NONRESIDUE,
            qq=int(qq[d]),
            nn=int(nn[d]),
            qn=int(qn[d]),
            expected_qq=quarter - 1 if in_q else quarter,
            expected_nn=quarter if in_q else quarter - 1,
            expected_qn=quarter,
        )
        if strict and not row.holds:
            raise ValidationError(f"Residue difference counts disagree with the closed form at d={d}", row.model_dump())
        rows.append(row)
    return rows


def cayley_two_block(
    group: AbelianGroup,
    d11: Iterable[int],
    d12: Iterable[int],
    d22: Iterable[int],
) -> Graph:
    """``Γ_G(D11, D12, D22)`` on ``V1 = G`` (labels ``0..|G|-1``) and ``V2`` (``|G|..2|G|-1``).

    ``x ~ y`` inside ``V1`` iff ``y - x`` is in ``D11``, inside ``V2`` iff it is
    in ``D22``, and ``x in V1 ~ y in V2`` iff ``y - x`` is in ``D12``.
    """
    n = group.order
    a, b, c = sorted(set(d11)), sorted(set(d12)), sorted(set(d22))
    check_difference_set(group, a, "D11")
    check_difference_set(group, c, "D22")
    in_a, in_b, in_c = set(a), set(b), set(c)

    idx = np.arange(n, dtype=np.int64)
    rows = [0] * (2 * n)
    for x in range(n):
        diffs = _differences(group, idx, x)
        for y in range(n):
            d = int(diffs[y])
            if d in in_a:
                rows[x] |= 1 << y
            if d in in_c:
                rows[n + x] |= 1 << (n + y)
            if d in in_b:
                rows[x] |= 1 << (n + y)
                rows[n + y] |= 1 << x
    return Graph(2 * n, tuple(rows))


def _differences(group: AbelianGroup, ys: np.ndarray, x: int) -> np.ndarray:
    """``y - x`` for every ``y`` in ``ys``."""
    if isinstance(group, FiniteField):
        return group._combine(ys, np.full(len(ys), x, dtype=np.int64), -1)
    return (ys - x) % group.order


def _paley_parameters(q: int) -> Tuple[FiniteField, int]:
    if q % 4 != 1:
        raise ValidationError(f"Paley constructions need q = 1 mod 4, got {q}", {"q": q})
    f = field_of_order(q)
    return f, (q + 1) // 2


def paley_graph(q: int) -> Graph:
    """Classical Paley graph on ``F_q``: ``x ~ y`` iff ``x - y`` is a nonzero square."""
    f, _ = _paley_parameters(q)
    q_set, _ = residues(f)
    squares = set(q_set)
    idx = np.arange(q, dtype=np.int64)
    rows = []
    for x in range(q):
        diffs = _differences(f, idx, x)
        mask = 0
        for y in range(q):
            if int(diffs[y]) in squares:
                mask |= 1 << y
        rows.append(mask)
    return Graph(q, tuple(rows))


def paley_book_graph(q: int, field: Optional[FiniteField] = None) -> Graph:
    """``Γ_{F_q}(Q, Q, N)`` on ``2q`` vertices, free of ``B_{n-1}`` with complement free of ``B_n``."""
    f = field
    if f is None:
        f, _ = _paley_parameters(q)
    elif f.q != q or q % 4 != 1:
        raise ValidationError(f"Field of order {f.q} does not match q={q} = 1 mod 4")
    q_set, n_set = residues(f)
    return cayley_two_block(f, q_set, q_set, n_set)


def paley_book_report(q: int) -> ConditionReport:
    """Per-family maxima of ``Γ_{F_q}(Q, Q, N)`` against ``(n-1, n)``."""
    f, n = _paley_parameters(q)
    q_set, n_set = residues(f)
    return check_group_conditions(f, q_set, q_set, n_set, BookParams.of(n - 1, n))


def expected_paley_maxima(q: int) -> Tuple[int, ...]:
    """Closed-form family maxima ``(n-3, n-2, n-2 | n-1, n-2, n-1)``."""
    n = (q + 1) // 2
    return (n - 3, n - 2, n - 2, n - 1, n - 2, n - 1)

