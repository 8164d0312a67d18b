"""Integer-program search for 2-block-circulant Ramsey witnesses.

Indicator variables describe the difference sets: ``x_i`` (``i`` in D11),
``z_i`` (``i`` in D12) and ``w_i`` (``i`` in D22; absent under the complement
ansatz, where D22 is ``Z_m \\ {0}`` minus D11). Every common-neighbour count
in the six book-condition families is a sum of products of indicators (or of
their complements), linearized with one binary product variable per term.
Feasible points correspond one-to-one to specs passing the book conditions.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, TextIO, Tuple

import structlog

from .circulant import BlockCirculantSpec
from .config.logging import get_performance_logger
from .constants import PIN_PRESETS
from .types.exceptions import DecodeError, ParseError, ValidationError
from .types.models import BookParams, IpOptions

logger = structlog.get_logger(__name__)

DUMMY_VAR = "__dummy"

# A factor is a (variable, negated) pair meaning ``v`` or ``1 - v``, or the constant 0.
Factor = Optional[Tuple[str, bool]]
Indicator = Callable[[int], Factor]


@dataclass
class Constraint:
    name: str
    terms: List[Tuple[str, int]]
    sense: str
    rhs: int

    def evaluate(self, values: Mapping[str, int]) -> bool:
        lhs = sum(coef * values.get(var, 0) for var, coef in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IpModel:
    """Binary feasibility model: declared variables plus named linear rows."""

    variables: List[str] = field(default_factory=list)
    constraints: List[Constraint] = field(default_factory=list)
    products: Dict[str, List[Tuple[str, bool]]] = field(default_factory=dict)
    _declared: set = field(default_factory=set, repr=False)

    def add_variable(self, name: str) -> str:
        if name in self._declared:
            raise ValidationError(f"Variable {name} declared twice")
        self._declared.add(name)
        self.variables.append(name)
        return name

    def has_variable(self, name: str) -> bool:
        return name in self._declared

    def add_constraint(
        self,
        terms: Sequence[Tuple[str, int]],
        sense: str,
        rhs: int,
        name: Optional[str] = None,
    ) -> Optional[Constraint]:
        """Add ``sum(coef * var) <sense> rhs``; terms on the same variable are merged."""
        if sense not in ("<=", ">=", "="):
            raise ValidationError(f"Unknown constraint sense {sense!r}")
        merged: Dict[str, int] = {}
        for var, coef in terms:
            if var not in self._declared:
                raise ValidationError(f"Constraint references undeclared variable {var}")
            merged[var] = merged.get(var, 0) + coef
        clean = [(var, coef) for var, coef in merged.items() if coef != 0]
        if name is None:
            name = f"c{len(self.constraints) + 1}"
        if not clean:
            trivially_true = Constraint(name, [], sense, rhs).evaluate({})
            if trivially_true:
                return None
            if not self.has_variable(DUMMY_VAR):
                self.add_variable(DUMMY_VAR)
                self.constraints.append(Constraint("_dummy", [(DUMMY_VAR, 1)], "=", 0))
            clean = [(DUMMY_VAR, 1)]
        constraint = Constraint(name, clean, sense, rhs)
        self.constraints.append(constraint)
        return constraint

    def product_values(self, values: Mapping[str, int]) -> Dict[str, int]:
        """Values of the product variables implied by indicator values."""
        out = {}
        for name, factors in self.products.items():
            out[name] = int(all((1 - values.get(v, 0)) if neg else values.get(v, 0) for v, neg in factors))
        return out


def _render_terms(terms: Sequence[Tuple[str, int]]) -> str:
    parts = []
    for index, (var, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        body = var if magnitude == 1 else f"{magnitude} {var}"
        if index == 0:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def write_lp(model: IpModel, sink: Optional[TextIO] = None) -> str:
    """Render the model in CPLEX LP format with a constant-zero objective."""
    out = io.StringIO()
    out.write("Minimize\n obj: 0\nSubject To\n")
    for constraint in model.constraints:
        out.write(f" {constraint.name}: {_render_terms(constraint.terms)} {constraint.sense} {constraint.rhs}\n")
    out.write("Binary\n")
    for var in model.variables:
        out.write(f" {var}\n")
    out.write("End\n")
    text = out.getvalue()
    if sink is not None:
        sink.write(text)
    return text


# -- block-circulant model -------------------------------------------------


def _x(i: int) -> str:
    return f"x_{i}"


def _z(i: int) -> str:
    return f"z_{i}"


def _w(i: int) -> str:
    return f"w_{i}"


def _set_indicators(opts: IpOptions) -> Dict[str, Indicator]:
    """Affine indicator of membership for each set and each complement set."""

    def d11(i: int) -> Factor:
        return None if i == 0 else (_x(i), False)

    def d11_bar(i: int) -> Factor:
        return None if i == 0 else (_x(i), True)

    def d12(i: int) -> Factor:
        return (_z(i), False)

    def d12_bar(i: int) -> Factor:
        return (_z(i), True)

    if opts.complement_ansatz:

        def d22(i: int) -> Factor:
            return None if i == 0 else (_x(i), True)

        def d22_bar(i: int) -> Factor:
            return None if i == 0 else (_x(i), False)

    else:

        def d22(i: int) -> Factor:
            return None if i == 0 else (_w(i), False)

        def d22_bar(i: int) -> Factor:
            return None if i == 0 else (_w(i), True)

    return {"11": d11, "12": d12, "22": d22, "11b": d11_bar, "12b": d12_bar, "22b": d22_bar}


def _simplify(factors: Sequence[Factor]) -> Optional[List[Tuple[str, bool]]]:
    """Drop duplicate factors; ``None`` when the product is identically 0."""
    out: List[Tuple[str, bool]] = []
    for factor in factors:
        if factor is None:
            return None
        var, neg = factor
        if (var, not neg) in out:
            return None
        if factor not in out:
            out.append(factor)
    return out


def _add_product(
    model: IpModel,
    name: str,
    factors: List[Tuple[str, bool]],
) -> Tuple[List[Tuple[str, int]], int]:
    """Linearize a product; returns its affine form ``(terms, constant)``."""
    if len(factors) == 1:
        var, neg = factors[0]
        return ([(var, -1)], 1) if neg else ([(var, 1)], 0)

    model.add_variable(name)
    model.products[name] = factors
    negated = 0
    lower: List[Tuple[str, int]] = [(name, 1)]
    for var, neg in factors:
        if neg:
            model.add_constraint([(name, 1), (var, 1)], "<=", 1, name=f"{name}_le_{var}")
            lower.append((var, 1))
            negated += 1
        else:
            model.add_constraint([(name, 1), (var, -1)], "<=", 0, name=f"{name}_le_{var}")
            lower.append((var, -1))
    # p >= sum(f) - (k - 1), with f = 1 - v for negated factors
    model.add_constraint(lower, ">=", negated - (len(factors) - 1), name=f"{name}_ge")
    return [(name, 1)], 0


def _family_terms(m: int, family: int, d: int, ind: Dict[str, Indicator]) -> List[Tuple[str, List[Factor]]]:
    """Product terms of one family row, tagged ``a``/``b`` by summand."""
    bar = "b" if family > 3 else ""
    s11, s12, s22 = ind["11" + bar], ind["12" + bar], ind["22" + bar]
    kind = (family - 1) % 3
    terms: List[Tuple[str, List[Factor]]] = []
    for i in range(m):
        j = (i + d) % m
        if kind == 0:
            gate = s11(d)
            terms.append((f"a_{i}_{d}", [s11(i), s11(j), gate]))
            terms.append((f"b_{i}_{d}", [s12(i), s12(j), gate]))
        elif kind == 1:
            gate = s22(d)
            terms.append((f"a_{i}_{d}", [s22(i), s22(j), gate]))
            terms.append((f"b_{i}_{d}", [s12(i), s12(j), gate]))
        else:
            gate = s12(d)
            terms.append((f"a_{i}_{d}", [s11(i), s12((d - i) % m), gate]))
            terms.append((f"b_{i}_{d}", [s22(i), s12(j), gate]))
    return terms


def encode_block_circulant_ip(m: int, params: BookParams, opts: Optional[IpOptions] = None) -> IpModel:
    """Feasibility model whose solutions are the specs passing the six book-condition families.

    Families 1-3 bound edges inside ``V1``, inside ``V2`` and across the blocks
    by ``r - 1``; families 4-6 bound the complement by ``s - 1``. Families on
    the diagonal blocks range over ``d != 0``, the cross families over all ``d``.
    """
    if m < 2:
        raise ValidationError(f"Block size must be at least 2, got {m}", {"m": m})
    opts = opts or IpOptions()
    bad_pins = [i for i in opts.pinned if i >= m]
    if bad_pins:
        raise ValidationError(f"Pinned elements {bad_pins} are outside 1..{m - 1}", {"pinned": list(opts.pinned)})

    with get_performance_logger().timed("encode_ip", m=m, r=params.r, s=params.s) as stats:
        model = IpModel()
        for i in range(m):
            model.add_variable(_x(i))
        for i in range(m):
            model.add_variable(_z(i))
        if not opts.complement_ansatz:
            for i in range(m):
                model.add_variable(_w(i))

        _structural_rows(model, m, opts)
        _ansatz_rows(model, m, opts)

        ind = _set_indicators(opts)
        for family in range(1, 7):
            bound = (params.r if family <= 3 else params.s) - 1
            diagonal = (family - 1) % 3 != 2
            for d in range(1 if diagonal else 0, m):
                row_terms: List[Tuple[str, int]] = []
                constant = 0
                for tag, factors in _family_terms(m, family, d, ind):
                    simplified = _simplify(factors)
                    if simplified is None:
                        continue
                    terms, const = _add_product(model, f"p{family}{tag}", simplified)
                    row_terms.extend(terms)
                    constant += const
                model.add_constraint(row_terms, "<=", bound - constant, name=f"f{family}_d{d}")
        stats.update(variables=len(model.variables), constraints=len(model.constraints))
    return model


def _structural_rows(model: IpModel, m: int, opts: IpOptions) -> None:
    families = [_x] if opts.complement_ansatz else [_x, _w]
    for var in families:
        model.add_constraint([(var(0), 1)], "=", 0, name=f"fix_{var(0)}")
    for var in families:
        for i in range(1, m):
            if i < m - i:
                model.add_constraint([(var(i), 1), (var(m - i), -1)], "=", 0, name=f"neg_{var(i)}")


def _ansatz_rows(model: IpModel, m: int, opts: IpOptions) -> None:
    if opts.d11_eq_d12:
        for i in range(m):
            model.add_constraint([(_x(i), 1), (_z(i), -1)], "=", 0, name=f"eq_{i}")
    for i in opts.pinned:
        model.add_constraint([(_x(i), 1)], "=", 1, name=f"pin_{i}")


def resolve_pins(text: Optional[str]) -> Tuple[int, ...]:
    """``"1,2,3"`` or a preset name (``consecutive``/``squares``) to a pin tuple."""
    if not text:
        return ()
    if text in PIN_PRESETS:
        return PIN_PRESETS[text]
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise ValidationError(f"Invalid pin list {text!r}") from exc


# -- assignments -----------------------------------------------------------


def evaluate_assignment(model: IpModel, indicators: Mapping[str, int]) -> Optional[str]:
    """Name of the first row violated once products are completed, or ``None``."""
    values = dict(indicators)
    values.update(model.product_values(values))
    for constraint in model.constraints:
        if not constraint.evaluate(values):
            return constraint.name
    return None


def spec_to_indicators(spec: BlockCirculantSpec, opts: Optional[IpOptions] = None) -> Dict[str, int]:
    opts = opts or IpOptions()
    if opts.complement_ansatz and not spec.uses_complement_convention:
        raise ValidationError("Spec does not satisfy the complement ansatz (D22 != complement of D11)")
    d11, d12, d22 = set(spec.d11), set(spec.d12), set(spec.d22)
    values = {}
    for i in range(spec.m):
        values[_x(i)] = int(i in d11)
    for i in range(spec.m):
        values[_z(i)] = int(i in d12)
    if not opts.complement_ansatz:
        for i in range(spec.m):
            values[_w(i)] = int(i in d22)
    return values


def solution_to_spec(m: int, assignment: Mapping[str, int], opts: Optional[IpOptions] = None) -> BlockCirculantSpec:
    """Read the difference sets back from indicator values (missing variables read as 0)."""
    opts = opts or IpOptions()

    def bit(name: str) -> int:
        value = int(assignment.get(name, 0))
        if value not in (0, 1):
            raise DecodeError(f"Variable {name} has non-binary value {value}", {"variable": name})
        return value

    names = [_x] if opts.complement_ansatz else [_x, _w]
    for var in names:
        if bit(var(0)):
            raise DecodeError(f"{var(0)} is set; 0 cannot belong to a diagonal block", {"variable": var(0)})
        for i in range(1, m):
            if bit(var(i)) != bit(var(m - i)):
                raise DecodeError(
                    f"Negation closure violated: {var(i)} != {var(m - i)}",
                    {"variable": var(i), "partner": var(m - i)},
                )

    d11 = [i for i in range(m) if bit(_x(i))]
    d12 = [i for i in range(m) if bit(_z(i))]
    d22 = None if opts.complement_ansatz else [i for i in range(m) if bit(_w(i))]
    try:
        return BlockCirculantSpec.from_sets(m, d11, d12, d22)
    except ValidationError as exc:
        raise DecodeError(f"Decoded sets do not form a valid spec: {exc.message}") from exc


def read_solution(text: str) -> Dict[str, int]:
    """Parse ``name value`` lines; header lines and ``(obj:...)`` columns are ignored."""
    values: Dict[str, int] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if len(tokens) < 2:
            continue
        try:
            number = float(tokens[1])
        except ValueError:
            continue
        if number != round(number):
            raise ParseError(f"Variable {tokens[0]} has fractional value {tokens[1]}", line=line_no)
        values[tokens[0]] = int(round(number))
    return values