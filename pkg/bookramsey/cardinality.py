"""Totalizer encoding of at-most-k constraints.

The inputs are the leaves of a binary tree split at the midpoint. Every
internal node owns unary counter variables ``o_1..o_m`` with
``m = min(leaves below, k + 1)``; ``o_t`` is implied whenever at least ``t``
leaves below the node are true. Forbidding ``o_{k+1}`` at the root forbids
more than ``k`` true inputs. Auxiliary variables are numbered in post-order
starting at ``next_var``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from .types.exceptions import ValidationError

Clause = List[int]
Assignment = Union[Mapping[int, bool], Sequence[int]]


@dataclass
class TotalizerNode:
    """One tree node: the input literals below it and its counter outputs."""

    leaves: Tuple[int, ...]
    outputs: Tuple[int, ...]


@dataclass
class TotalizerEncoding:
    literals: Tuple[int, ...]
    k: int
    clauses: List[Clause] = field(default_factory=list)
    aux_count: int = 0
    nodes: List[TotalizerNode] = field(default_factory=list)

    def __iter__(self) -> Iterator:
        yield self.clauses
        yield self.aux_count

    @property
    def aux_vars(self) -> List[int]:
        return [v for node in self.nodes if len(node.leaves) > 1 for v in node.outputs]

    def evaluate(self, assignment: Assignment) -> Dict[int, bool]:
        """Counter values implied by an input assignment (``o_t`` = at least ``t`` true)."""
        truth = _truth(assignment)
        values: Dict[int, bool] = {}
        for node in self.nodes:
            if len(node.leaves) == 1:
                continue
            count = sum(1 for lit in node.leaves if _lit_value(truth, lit))
            for t, var in enumerate(node.outputs, start=1):
                values[var] = count >= t
        return values


def _truth(assignment: Assignment) -> Mapping[int, bool]:
    if isinstance(assignment, Mapping):
        return assignment
    return {abs(lit): lit > 0 for lit in assignment}


def _lit_value(truth: Mapping[int, bool], lit: int) -> bool:
    value = truth.get(abs(lit))
    if value is None:
        raise ValidationError(f"Assignment does not cover variable {abs(lit)}")
    return value if lit > 0 else not value


def at_most_k(literals: Sequence[int], k: int, next_var: int) -> TotalizerEncoding:
    """Clauses allowing at most ``k`` of ``literals`` to be true.

    ``k >= len(literals)`` is vacuous (no clauses, no auxiliaries) and
    ``k == 0`` becomes one negative unit clause per literal.
    """
    if k < 0:
        raise ValidationError(f"Cardinality bound must be non-negative, got {k}", {"k": k})
    if any(lit == 0 for lit in literals):
        raise ValidationError("Literal 0 is not a valid literal")
    lits = tuple(literals)
    encoding = TotalizerEncoding(literals=lits, k=k)
    if k >= len(lits):
        return encoding
    if k == 0:
        encoding.clauses = [[-lit] for lit in lits]
        return encoding

    counter = [next_var]
    root = _build(lits, k + 1, counter, encoding)
    encoding.clauses.append([-root.outputs[k]])
    encoding.aux_count = counter[0] - next_var
    return encoding


def _build(lits: Tuple[int, ...], cap: int, counter: List[int], encoding: TotalizerEncoding) -> TotalizerNode:
    if len(lits) == 1:
        node = TotalizerNode(leaves=lits, outputs=lits)
        encoding.nodes.append(node)
        return node

    mid = len(lits) // 2
    left = _build(lits[:mid], cap, counter, encoding)
    right = _build(lits[mid:], cap, counter, encoding)

    m = min(len(lits), cap)
    outputs = tuple(range(counter[0], counter[0] + m))
    counter[0] += m

    for a in range(len(left.outputs) + 1):
        for b in range(len(right.outputs) + 1):
            if a + b == 0 or a + b > m:
                continue
            clause = []
            if a:
                clause.append(-left.outputs[a - 1])
            if b:
                clause.append(-right.outputs[b - 1])
            clause.append(outputs[a + b - 1])
            encoding.clauses.append(clause)

    node = TotalizerNode(leaves=lits, outputs=outputs)
    encoding.nodes.append(node)
    return node
