"""Literals, clauses and the retention/conflict predicates of the main loop."""

from __future__ import annotations

import enum
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union

from .term import (
    App,
    Position,
    Substitution,
    Symbol,
    Term,
    Var,
    is_ground,
    max_var_index,
    rename_apart,
    size,
    unify_pairs,
)

EQUAL = Symbol("EQUAL", 2)


class Orientation(enum.Enum):
    """Which side of ``EQUAL(l, r)`` is matched against the into-term."""

    LEFT_TO_RIGHT = "lr"
    RIGHT_TO_LEFT = "rl"

    def split(self, eq_args: Tuple[Term, Term]) -> Tuple[Term, Term]:
        if self is Orientation.LEFT_TO_RIGHT:
            return eq_args[0], eq_args[1]
        return eq_args[1], eq_args[0]


ORIENTATIONS = (Orientation.LEFT_TO_RIGHT, Orientation.RIGHT_TO_LEFT)


class Literal(NamedTuple):
    positive: bool
    predicate: Symbol
    args: Tuple[Term, ...]

    @classmethod
    def of(cls, predicate: str, *args: Term, positive: bool = True) -> "Literal":
        return cls(positive, Symbol(predicate, len(args)), tuple(args))

    def negate(self) -> "Literal":
        return self._replace(positive=not self.positive)

    @property
    def is_equality(self) -> bool:
        return self.predicate is EQUAL

    def __repr__(self) -> str:
        sign = "" if self.positive else "-"
        if not self.args:
            return sign + self.predicate.name
        return f"{sign}{self.predicate.name}({','.join(map(repr, self.args))})"


class InputOrigin(NamedTuple):
    list_name: str


class InferenceOrigin(NamedTuple):
    """Provenance of a paramodulant.

    ``rule`` is ``"para"`` for main-loop inferences and ``"hot"`` for
    hot-list products. ``position`` is ``(literal_index, arg_index, ...)``
    with 0-based literal index and 1-based argument path.
    """

    rule: str
    into_id: int
    from_id: int
    position: Tuple[int, ...]
    orientation: Orientation


Origin = Union[InputOrigin, InferenceOrigin]


class Clause:
    """A clause with a run-unique id and its provenance."""

    __slots__ = ("id", "literals", "origin", "ground")

    def __init__(self, id: int, literals: Sequence[Literal], origin: Origin,
                 ground: Optional[bool] = None):
        literals = tuple(literals)
        if not literals:
            raise ValueError("a clause needs at least one literal")
        self.id = id
        self.literals = literals
        self.origin = origin
        if ground is None:
            ground = all(is_ground(a) for lit in literals for a in lit.args)
        self.ground = ground

    @property
    def is_unit(self) -> bool:
        return len(self.literals) == 1

    @property
    def has_positive_equality(self) -> bool:
        return any(lit.positive and lit.predicate is EQUAL for lit in self.literals)

    def __repr__(self) -> str:
        return f"Clause({self.id}, {' | '.join(map(repr, self.literals))})"


def canonical_literals(literals: Sequence[Literal]) -> Tuple[Literal, ...]:
    """Rename variables to ``Var("", k)`` in order of first occurrence."""
    mapping: Dict[Var, Var] = {}

    def walk(t: Term) -> Term:
        if type(t) is Var:
            v = mapping.get(t)
            if v is None:
                v = mapping[t] = Var("", len(mapping))
            return v
        if not t.args:
            return t
        return App(t.head, tuple([walk(a) for a in t.args]))

    return tuple(lit._replace(args=tuple([walk(a) for a in lit.args])) for lit in literals)


def variant_key(clause_or_literals) -> Tuple[Literal, ...]:
    """Hashable key equal for exactly the clauses that are variants."""
    if isinstance(clause_or_literals, Clause):
        if clause_or_literals.ground:
            return clause_or_literals.literals
        return canonical_literals(clause_or_literals.literals)
    return canonical_literals(tuple(clause_or_literals))


def is_variant(a: Clause, b: Clause) -> bool:
    return variant_key(a) == variant_key(b)


def unit_conflict(a: Clause, b: Clause) -> Optional[Substitution]:
    """Unifier refuting two opposite-sign unit clauses, else ``None``."""
    if not (a.is_unit and b.is_unit):
        return None
    la, lb = a.literals[0], b.literals[0]
    if la.predicate is not lb.predicate or la.positive == lb.positive:
        return None
    if a.ground and b.ground:
        return {} if la.args == lb.args else None
    offset = max_var_index(la.args) + 1
    b_args = tuple(rename_apart(t, offset) for t in lb.args) if offset else lb.args
    return unify_pairs(zip(la.args, b_args))


def clause_weight(c: Union[Clause, Sequence[Literal]]) -> int:
    literals = c.literals if isinstance(c, Clause) else c
    return sum(1 + sum(size(a) for a in lit.args) for lit in literals)


def position_str(position: Position) -> str:
    return ".".join(map(str, position)) if position else "root"
