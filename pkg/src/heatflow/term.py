"""First-order terms, substitutions, positions and syntactic unification.

Terms are immutable tuples: ``Var(name, index)`` or ``App(head, args)``.
Function and predicate symbols are interned per ``(name, arity)`` so that
head comparisons are identity checks.
"""

from __future__ import annotations

import threading
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

VARIABLE_INITIALS = frozenset("uvwxyz")


class Symbol:
    """An interned function, constant or predicate symbol."""

    __slots__ = ("name", "arity", "__weakref__")

    _table: Dict[Tuple[str, int], "Symbol"] = {}
    _lock = threading.Lock()

    def __new__(cls, name: str, arity: int = 0) -> "Symbol":
        key = (name, arity)
        sym = cls._table.get(key)
        if sym is not None:
            return sym
        if arity < 0:
            raise ValueError(f"negative arity for {name!r}")
        with cls._lock:
            sym = cls._table.get(key)
            if sym is None:
                sym = object.__new__(cls)
                sym.name = name
                sym.arity = arity
                cls._table[key] = sym
        return sym

    def __reduce__(self):
        return (Symbol, (self.name, self.arity))

    def __repr__(self) -> str:
        return f"Symbol({self.name!r}/{self.arity})"


class Var(NamedTuple):
    name: str
    index: int = 0

    def __repr__(self) -> str:
        return self.name if self.index == 0 else f"{self.name}_{self.index}"


class App(NamedTuple):
    head: Symbol
    args: Tuple["Term", ...] = ()

    def __repr__(self) -> str:
        if not self.args:
            return self.head.name
        return f"{self.head.name}({','.join(map(repr, self.args))})"


Term = Union[Var, App]
Substitution = Dict[Var, Term]
Position = Tuple[int, ...]


class PositionError(ValueError):
    """Raised when a position does not address a subterm."""


def is_variable_name(name: str) -> bool:
    return bool(name) and name[0] in VARIABLE_INITIALS


def const(name: str) -> App:
    return App(Symbol(name, 0))


def fn(name: str, *args: Term) -> App:
    return App(Symbol(name, len(args)), tuple(args))


def var(name: str, index: int = 0) -> Var:
    return Var(name, index)


def is_ground(t: Term) -> bool:
    stack = [t]
    while stack:
        s = stack.pop()
        if type(s) is Var:
            return False
        stack.extend(s.args)
    return True


def variables(t: Term) -> List[Var]:
    """Distinct variables of ``t`` in order of first occurrence."""
    seen: Dict[Var, None] = {}
    stack = [t]
    while stack:
        s = stack.pop()
        if type(s) is Var:
            seen.setdefault(s)
        else:
            stack.extend(reversed(s.args))
    return list(seen)


def size(t: Term) -> int:
    n = 0
    stack = [t]
    while stack:
        s = stack.pop()
        n += 1
        if type(s) is App:
            stack.extend(s.args)
    return n


def max_var_index(terms: Iterable[Term]) -> int:
    """Largest variable index in ``terms``, or -1 when all are ground."""
    best = -1
    stack = list(terms)
    while stack:
        s = stack.pop()
        if type(s) is Var:
            if s.index > best:
                best = s.index
        else:
            stack.extend(s.args)
    return best


def subterms(t: Term) -> List[Tuple[Position, Term]]:
    """Every subterm with its position, outermost first, then left-to-right."""
    out = []
    stack = [((), t)]
    while stack:
        pos, s = stack.pop()
        out.append((pos, s))
        if type(s) is App and s.args:
            for i in range(len(s.args), 0, -1):
                stack.append((pos + (i,), s.args[i - 1]))
    return out


def subterm_at(t: Term, p: Position) -> Term:
    for i in p:
        if type(t) is Var or not 1 <= i <= len(t.args):
            raise PositionError(f"position {p} is not valid")
        t = t.args[i - 1]
    return t


def replace_at(t: Term, p: Position, s: Term) -> Term:
    if not p:
        return s
    i = p[0]
    if type(t) is Var or not 1 <= i <= len(t.args):
        raise PositionError(f"position {p} is not valid")
    args = t.args
    return App(t.head, args[: i - 1] + (replace_at(args[i - 1], p[1:], s),) + args[i:])


def apply(subst: Substitution, t: Term) -> Term:
    """Simultaneous substitution. Ground subterms are returned unchanged."""
    if not subst:
        return t
    return _apply(subst, t)


def _apply(subst: Substitution, t: Term) -> Term:
    if type(t) is Var:
        return subst.get(t, t)
    args = t.args
    if not args:
        return t
    new = tuple([_apply(subst, a) for a in args])
    for a, b in zip(args, new):
        if a is not b:
            return App(t.head, new)
    return t


def rename_apart(t: Term, offset: int) -> Term:
    """Shift every variable index by ``offset``."""
    if type(t) is Var:
        return Var(t.name, t.index + offset)
    if not t.args:
        return t
    new = tuple([rename_apart(a, offset) for a in t.args])
    for a, b in zip(t.args, new):
        if a is not b:
            return App(t.head, new)
    return t


def _walk(t: Term, bindings: Substitution) -> Term:
    while type(t) is Var:
        bound = bindings.get(t)
        if bound is None:
            return t
        t = bound
    return t


def _occurs(v: Var, t: Term, bindings: Substitution) -> bool:
    stack = [t]
    while stack:
        s = _walk(stack.pop(), bindings)
        if type(s) is Var:
            if s == v:
                return True
        else:
            stack.extend(s.args)
    return False


def unify_pairs(pairs: Iterable[Tuple[Term, Term]]) -> Optional[Substitution]:
    """Most general simultaneous unifier of all pairs, or ``None``."""
    bindings: Substitution = {}
    stack = list(pairs)
    stack.reverse()
    while stack:
        a, b = stack.pop()
        if a == b:
            continue
        a = _walk(a, bindings)
        b = _walk(b, bindings)
        if a == b:
            continue
        if type(a) is Var:
            if _occurs(a, b, bindings):
                return None
            bindings[a] = b
        elif type(b) is Var:
            if _occurs(b, a, bindings):
                return None
            bindings[b] = a
        else:
            if a.head is not b.head:
                return None
            stack.extend(zip(reversed(a.args), reversed(b.args)))
    return _resolve(bindings)


def unify(s: Term, t: Term) -> Optional[Substitution]:
    """Most general unifier of ``s`` and ``t`` (occurs check on), or ``None``."""
    return unify_pairs(((s, t),))


def _resolve(bindings: Substitution) -> Substitution:
    # fully dereference so the result is idempotent
    out: Substitution = {}
    for v in bindings:
        out[v] = _deref(bindings[v], bindings)
    return out


def _deref(t: Term, bindings: Substitution) -> Term:
    t = _walk(t, bindings)
    if type(t) is Var or not t.args:
        return t
    new = tuple([_deref(a, bindings) for a in t.args])
    for a, b in zip(t.args, new):
        if a is not b:
            return App(t.head, new)
    return t


def compose(first: Substitution, second: Substitution) -> Substitution:
    """The substitution equivalent to applying ``first`` then ``second``."""
    out = {v: apply(second, t) for v, t in first.items()}
    for v, t in second.items():
        out.setdefault(v, t)
    return {v: t for v, t in out.items() if t != v}


def iter_app_nodes(t: Term) -> Iterator[App]:
    for _, s in subterms(t):
        if type(s) is App:
            yield s
