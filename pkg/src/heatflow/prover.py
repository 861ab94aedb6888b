"""Given-clause saturation with paramodulation into the given clause.

The loop selects clauses from the set of support first-in first-out, moves
each to usable, and paramodulates every usable positive equality (both
orientations) into it. A given clause that is itself an equality is also
paramodulated into every other usable clause. Each retained product is
immediately run through the hot list when one is present.

Ground clauses are hash-consed to integer ids. Products of ground
into-clauses are a pure function of the into-clause and the from-clauses,
so they are tabulated per process and shared between runs.
"""

from __future__ import annotations

import enum
import gc
import itertools
import threading
import time
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .clause import (
    EQUAL,
    ORIENTATIONS,
    Clause,
    InferenceOrigin,
    Literal,
    Orientation,
    canonical_literals,
    clause_weight,
    unit_conflict,
)
from .term import (
    App,
    Term,
    Var,
    apply,
    is_ground,
    max_var_index,
    rename_apart,
    replace_at,
    subterms,
    unify,
    variables,
)

# (position, literals, ground)
Paramodulant = Tuple[Tuple[int, ...], Tuple[Literal, ...], bool]


class ProverError(Exception):
    """Malformed prover input or a broken proof record."""


@dataclass
class ProverConfig:
    max_generated: int = 5_000_000
    max_weight: Optional[int] = None
    heat_level: int = 1

    def __post_init__(self):
        if self.max_generated < 1:
            raise ValueError("max_generated must be at least 1")
        if self.heat_level < 1:
            raise ValueError("heat_level must be at least 1")
        if self.max_weight is not None and self.max_weight < 1:
            raise ValueError("max_weight must be positive")


@dataclass
class ProverStats:
    generated: int = 0
    retained: int = 0
    given: int = 0
    proof_moves: Optional[int] = None
    wall_ms: float = 0.0


class Status(enum.Enum):
    PROOF = "proof"
    SATURATED = "saturated"
    BUDGET_EXCEEDED = "budget"


@dataclass
class ProverResult:
    status: Status
    stats: ProverStats
    final_clause_id: Optional[int] = None
    conflict_id: Optional[int] = None
    clauses: Mapping[int, Clause] = field(default_factory=dict, repr=False, compare=False)

    @property
    def proved(self) -> bool:
        return self.status is Status.PROOF


# -- ground clause interning ------------------------------------------------

_GROUND_IDS: Dict[Tuple[Literal, ...], int] = {}
_GROUND_LITS: List[Tuple[Literal, ...]] = []
_COMPLEMENTS: Dict[int, int] = {}
_intern_lock = threading.Lock()


def ground_id(literals: Tuple[Literal, ...]) -> int:
    gid = _GROUND_IDS.get(literals)
    if gid is None:
        with _intern_lock:
            gid = _GROUND_IDS.get(literals)
            if gid is None:
                gid = _GROUND_IDS[literals] = len(_GROUND_LITS)
                _GROUND_LITS.append(literals)
    return gid


def _complement_id(gid: int) -> int:
    cid = _COMPLEMENTS.get(gid)
    if cid is None:
        (lit,) = _GROUND_LITS[gid]
        cid = _COMPLEMENTS[gid] = ground_id((lit.negate(),))
    return cid


# -- paramodulation ---------------------------------------------------------

def _normalize_vars(literals: Tuple[Literal, ...]) -> Tuple[Literal, ...]:
    """Renumber variables so each keeps its name with the smallest free index."""
    mapping: Dict[Var, Var] = {}
    used: Dict[str, int] = {}

    def walk(t: Term) -> Term:
        if type(t) is Var:
            v = mapping.get(t)
            if v is None:
                k = used.get(t.name, 0)
                used[t.name] = k + 1
                v = mapping[t] = Var(t.name, k)
            return v
        if not t.args:
            return t
        return App(t.head, tuple([walk(a) for a in t.args]))

    return tuple(lit._replace(args=tuple([walk(a) for a in lit.args])) for lit in literals)


@lru_cache(maxsize=256)
def _skeleton(pattern: App) -> Tuple[Tuple[Tuple[int, ...], object], ...]:
    """Non-root symbol constraints of ``pattern``, constants first."""
    cons = [(pos, sub.head) for pos, sub in subterms(pattern)[1:] if type(sub) is App]
    cons.sort(key=lambda c: c[1].arity != 0)
    return tuple(cons)


def _fits(sub: App, skeleton) -> bool:
    # necessary condition for a ground ``sub`` to be an instance of the pattern
    try:
        for path, head in skeleton:
            t = sub
            for i in path:
                t = t.args[i - 1]
            if t.head is not head:
                return False
    except (IndexError, AttributeError):
        return False
    return True


def _match(pattern: Term, target: Term, subst: Dict[Var, Term]) -> bool:
    # one-way matching; this is the mgu when target is ground
    if type(pattern) is Var:
        bound = subst.get(pattern)
        if bound is None:
            subst[pattern] = target
            return True
        return bound == target
    if pattern.head is not target.head:
        return False
    for p, t in zip(pattern.args, target.args):
        if not _match(p, t, subst):
            return False
    return True


def _sites(into: Tuple[Literal, ...], wanted=None) -> Dict[object, List[tuple]]:
    """Non-variable into-positions grouped by head symbol, in traversal order.

    With ``wanted`` only those head symbols are collected.
    """
    by_head: Dict[object, List[tuple]] = {}
    for i, lit in enumerate(into):
        for k, arg in enumerate(lit.args):
            stack = [(arg, ())]
            while stack:
                t, pos = stack.pop()
                if type(t) is Var:
                    continue
                head = t.head
                if wanted is None or head in wanted:
                    sites = by_head.get(head)
                    if sites is None:
                        sites = by_head[head] = []
                    sites.append((i, k, pos, t))
                args = t.args
                for n in range(len(args), 0, -1):
                    a = args[n - 1]
                    if type(a) is Var or (a.args or wanted is None or a.head in wanted):
                        stack.append((a, pos + (n,)))
    return by_head


def _substitute(sigma, lits: Sequence[Literal]) -> Tuple[Literal, ...]:
    return tuple(l._replace(args=tuple([apply(sigma, a) for a in l.args])) for l in lits)


def _literal_vars(lits) -> set:
    return {v for l in lits for a in l.args for v in variables(a)}


@lru_cache(maxsize=1024)
def _oriented(from_lits: Tuple[Literal, ...], lr: bool) -> tuple:
    """Per equality literal: (lhs, rhs, skeleton, rest, closed).

    ``closed`` means every variable of the product is bound by matching
    ``lhs``, so a ground into-clause always yields a ground product.
    """
    out = []
    for j, eq in enumerate(from_lits):
        if not eq.positive or eq.predicate is not EQUAL:
            continue
        lhs, rhs = eq.args if lr else eq.args[::-1]
        if type(lhs) is Var:
            continue
        rest = from_lits[:j] + from_lits[j + 1:]
        closed = (set(variables(rhs)) | _literal_vars(rest)) <= set(variables(lhs))
        out.append((lhs, rhs, _skeleton(lhs), rest, closed))
    return tuple(out)


def _paramodulants(into: Tuple[Literal, ...], from_lits: Tuple[Literal, ...],
                   orientation: Orientation, into_ground: bool,
                   sites: Optional[Dict[object, List[tuple]]] = None) -> List[Paramodulant]:
    if not into_ground:
        offset = max_var_index(a for lit in into for a in lit.args) + 1
        if offset:
            from_lits = tuple(lit._replace(args=tuple(rename_apart(a, offset) for a in lit.args))
                              for lit in from_lits)
    if sites is None:
        sites = _sites(into)
    out: List[Paramodulant] = []
    for lhs, rhs, skeleton, rest, closed in _oriented(from_lits,
                                                      orientation is Orientation.LEFT_TO_RIGHT):
        for i, k, pos, sub in sites.get(lhs.head, ()):
            if into_ground:
                if not _fits(sub, skeleton):
                    continue
                sigma: Optional[Dict[Var, Term]] = {}
                if not _match(lhs, sub, sigma):
                    continue
            else:
                sigma = unify(lhs, sub)
                if sigma is None:
                    continue
            lit = into[i]
            new_arg = replace_at(lit.args[k], pos, apply(sigma, rhs))
            new_lit = lit._replace(args=lit.args[:k] + (new_arg,) + lit.args[k + 1:])
            if into_ground:
                lits = into[:i] + (new_lit,) + into[i + 1:]
                if rest:
                    lits += _substitute(sigma, rest)
                ground = closed or all(is_ground(a) for l in lits for a in l.args)
            else:
                lits = _substitute(sigma, into[:i] + (new_lit,) + into[i + 1:] + rest)
                ground = all(is_ground(a) for l in lits for a in l.args)
            if not ground:
                lits = _normalize_vars(lits)
            out.append(((i, k + 1) + pos, lits, ground))
    return out


def paramodulants(into: Sequence[Literal], from_lits: Sequence[Literal],
                  orientation: Orientation) -> List[Paramodulant]:
    """All paramodulants from ``from_lits`` into ``into`` for one orientation.

    Returns ``(position, literals, ground)`` triples in deterministic order:
    equality literals of the from clause, then into-literals, then subterms
    outermost first and left to right. Positions are
    ``(literal_index, arg_index, *path)`` with a 0-based literal index.
    Variable into-positions and variable equation sides are skipped.
    """
    into = tuple(into)
    ground = all(is_ground(a) for lit in into for a in lit.args)
    return _paramodulants(into, tuple(from_lits), orientation, ground)


def para_into(given: Clause, from_eq: Clause, orientation: Orientation,
              ids: Optional[Iterator[int]] = None, rule: str = "para") -> List[Clause]:
    """Paramodulate ``from_eq`` into ``given``; one clause per unifying position."""
    if ids is None:
        ids = itertools.count(max(given.id, from_eq.id) + 1)
    return [
        Clause(next(ids), lits, InferenceOrigin(rule, given.id, from_eq.id, pos, orientation), ground)
        for pos, lits, ground in _paramodulants(given.literals, from_eq.literals, orientation,
                                                given.ground)
    ]


def hot_pass(new_clause: Clause, hot: Sequence[Clause], heat_level: int = 1,
             ids: Optional[Iterator[int]] = None) -> List[Clause]:
    """Products of every hot equality (both orientations) into ``new_clause``.

    Products at depth below ``heat_level`` are heated again. No retention
    is applied; the prover filters products itself.
    """
    if ids is None:
        ids = itertools.count(max([new_clause.id] + [h.id for h in hot]) + 1)
    out: List[Clause] = []
    frontier = [new_clause]
    for _ in range(heat_level):
        nxt = []
        for c in frontier:
            for h in hot:
                for o in ORIENTATIONS:
                    nxt.extend(para_into(c, h, o, ids, rule="hot"))
        out.extend(nxt)
        frontier = nxt
    return out


class _Context:
    """Inference partners fixed for a run, with their tabulated products.

    A product is ``(tag, result)`` where ``tags[tag]`` is
    ``(from_index, orientation, position)`` and ``result`` is the ground id
    of the paramodulant, or its literals when it is not ground.
    """

    __slots__ = ("froms", "table", "tags", "_tag_ids", "_heads")

    def __init__(self, froms: Tuple[Tuple[Literal, ...], ...]):
        self.froms = froms
        self._heads = frozenset(spec[0].head for f in froms for lr in (True, False)
                                for spec in _oriented(f, lr))
        self.table: Dict[int, tuple] = {}
        self.tags: List[tuple] = []
        self._tag_ids: Dict[tuple, int] = {}

    def _tag(self, key: tuple) -> int:
        t = self._tag_ids.get(key)
        if t is None:
            t = self._tag_ids[key] = len(self.tags)
            self.tags.append(key)
        return t

    def compute(self, into: Tuple[Literal, ...], ground: bool) -> tuple:
        sites = _sites(into, self._heads) if ground else None
        out = []
        for idx, from_lits in enumerate(self.froms):
            for o in ORIENTATIONS:
                for pos, lits, g in _paramodulants(into, from_lits, o, ground, sites):
                    out.append((self._tag((idx, o, pos)), ground_id(lits) if g else lits))
        return tuple(out)

    def ground_products(self, gid: int) -> tuple:
        products = self.table.get(gid)
        if products is None:
            if len(self.table) >= TABLE_LIMIT:
                self.table.clear()
            products = self.table[gid] = self.compute(_GROUND_LITS[gid], True)
        return products


_CONTEXTS: Dict[tuple, _Context] = {}
TABLE_LIMIT = 1_000_000


def _context(froms: Tuple[Tuple[Literal, ...], ...]) -> _Context:
    ctx = _CONTEXTS.get(froms)
    if ctx is None:
        with _intern_lock:
            ctx = _CONTEXTS.setdefault(froms, _Context(froms))
    return ctx


def clear_cache() -> None:
    """Drop tabulated products and interned ground clauses.

    Results of earlier runs keep their own reference to the old store.
    """
    global _GROUND_IDS, _GROUND_LITS, _COMPLEMENTS
    with _intern_lock:
        _CONTEXTS.clear()
        _oriented.cache_clear()
        _GROUND_IDS, _GROUND_LITS, _COMPLEMENTS = {}, [], {}


# -- the main loop ----------------------------------------------------------

class _Stop(Exception):
    pass


class _ClauseView(Mapping):
    """Clause id -> Clause over inputs plus compactly recorded products.

    Derived clauses are rebuilt on access from their ground id and
    provenance record ``(gid, parent_id, source, tag)``.
    """

    def __init__(self, inputs: Dict[int, Clause], records: Dict[int, tuple],
                 sources: Sequence[tuple]):
        self._inputs = inputs
        self._records = records
        self._sources = sources
        self._lits = _GROUND_LITS

    def __getitem__(self, cid: int) -> Clause:
        c = self._inputs.get(cid)
        if c is not None:
            return c
        gid, parent, source, tag = self._records[cid]
        rule, ctx, froms = self._sources[source]
        idx, o, pos = ctx.tags[tag]
        return Clause(cid, self._lits[gid], InferenceOrigin(rule, parent, froms[idx].id, pos, o),
                      True)

    def __contains__(self, cid) -> bool:
        return cid in self._inputs or cid in self._records

    def __iter__(self):
        yield from sorted(self._inputs)
        yield from self._records

    def __len__(self) -> int:
        return len(self._inputs) + len(self._records)


def _closed_equalities(clauses: Sequence[Clause]) -> bool:
    # products of a ground clause from these are always ground
    for c in clauses:
        if not c.has_positive_equality:
            continue
        if not c.is_unit:
            return False
        for lr in (True, False):
            if not all(spec[4] for spec in _oriented(c.literals, lr)):
                return False
    return True


class Prover:
    """One run of the given-clause loop over a problem."""

    def __init__(self, problem, config: Optional[ProverConfig] = None):
        self.problem = problem
        self.config = config or ProverConfig()
        self.stats = ProverStats()
        self.clauses: Mapping[int, Clause] = {}
        self.usable: List[Clause] = []
        self.usable_eqs: List[Clause] = []
        self.sos: deque = deque()
        self.hot: Tuple[Clause, ...] = tuple(problem.hot)
        self._hot_key = tuple(c.literals for c in self.hot)
        self._kept: Dict[object, int] = {}
        self._gid: Dict[int, int] = {}
        self._ground_units: Dict[int, Clause] = {}
        self._units: Dict[tuple, List[Clause]] = {}
        self._open_units: Dict[tuple, List[Clause]] = {}
        self._result: Optional[ProverResult] = None
        inputs = [*problem.usable, *problem.sos, *problem.hot, *problem.passive]
        ids = [c.id for c in inputs]
        if len(set(ids)) != len(ids):
            raise ProverError("input clause ids must be unique")
        self._next_id = max(ids, default=0) + 1

    @property
    def hot_enabled(self) -> bool:
        return bool(self.hot)

    def state_clauses(self) -> List[Clause]:
        """Retained positive unit STATE clauses, inputs included."""
        return [c for c in self.clauses.values()
                if c.is_unit and c.literals[0].positive
                and c.literals[0].predicate.name == "STATE"]

    # bookkeeping

    def _key(self, c: Clause):
        if c.ground:
            gid = self._gid[c.id] = ground_id(c.literals)
            return gid
        return canonical_literals(c.literals)

    def _index_unit(self, c: Clause, gid: Optional[int]) -> None:
        lit = c.literals[0]
        self._units.setdefault((lit.positive, lit.predicate), []).append(c)
        if gid is not None:
            self._ground_units.setdefault(gid, c)
        else:
            self._open_units.setdefault((lit.positive, lit.predicate), []).append(c)

    def _conflict(self, c: Clause, gid: Optional[int]) -> Optional[Clause]:
        lit = c.literals[0]
        if gid is not None:
            partner = self._ground_units.get(_complement_id(gid))
            if partner is not None:
                return partner
            candidates = self._open_units.get((not lit.positive, lit.predicate), ())
        else:
            candidates = self._units.get((not lit.positive, lit.predicate), ())
        for other in candidates:
            if unit_conflict(c, other) is not None:
                return other
        return None

    def _finish(self, status: Status, final_id: Optional[int] = None,
                partner_id: Optional[int] = None) -> ProverResult:
        res = ProverResult(status, self.stats, clauses=self.clauses)
        if status is Status.PROOF:
            res.final_clause_id = final_id
            res.conflict_id = partner_id
            self.stats.proof_moves = _count_inferences(self.clauses, (final_id, partner_id))
        self._result = res
        return res

    # general inference

    def _products(self, into: Clause, ctx: _Context) -> tuple:
        if into.ground:
            return ctx.ground_products(self._gid[into.id])
        return ctx.compute(into.literals, False)

    def _emit(self, products, ctx: _Context, froms: Sequence[Clause], rule: str,
              into_id: int, depth: int) -> None:
        stats = self.stats
        kept = self._kept
        limit = self.config.max_generated
        max_weight = self.config.max_weight
        heat = depth < self.config.heat_level and self.hot
        tags = ctx.tags
        for tag, res in products:
            stats.generated += 1
            cid = self._next_id
            self._next_id = cid + 1
            if stats.generated >= limit:
                self._finish(Status.BUDGET_EXCEEDED)
                raise _Stop
            if type(res) is int:
                gid, lits = res, _GROUND_LITS[res]
            else:
                gid, lits = None, res
            if max_weight is not None and clause_weight(lits) > max_weight:
                continue
            key = gid if gid is not None else canonical_literals(lits)
            if key in kept:
                continue
            kept[key] = cid
            idx, o, pos = tags[tag]
            clause = Clause(cid, lits, InferenceOrigin(rule, into_id, froms[idx].id, pos, o),
                            gid is not None)
            self.clauses[cid] = clause
            stats.retained += 1
            if gid is not None:
                self._gid[cid] = gid
            if len(lits) == 1:
                partner = self._conflict(clause, gid)
                if partner is not None:
                    self._finish(Status.PROOF, cid, partner.id)
                    raise _Stop
                self._index_unit(clause, gid)
            self.sos.append(clause)
            if heat:
                hot_ctx = _context(self._hot_key)
                self._emit(self._products(clause, hot_ctx), hot_ctx, self.hot, "hot", cid,
                           depth + 1)

    def _infer(self, given: Clause) -> None:
        if self.usable_eqs:
            eqs = tuple(self.usable_eqs)
            ctx = _context(tuple(c.literals for c in eqs))
            self._emit(self._products(given, ctx), ctx, eqs, "para", given.id, 0)
        if given.has_positive_equality:
            ctx = _context((given.literals,))
            for target in list(self.usable):
                if target is not given:
                    self._emit(self._products(target, ctx), ctx, (given,), "para", target.id, 0)

    def _run_general(self) -> ProverResult:
        while self.sos:
            given = self.sos.popleft()
            self.stats.given += 1
            self.usable.append(given)
            if given.has_positive_equality:
                self.usable_eqs.append(given)
            self._infer(given)
        return self._finish(Status.SATURATED)

    # ground fast path

    def _ground_mode(self) -> bool:
        """True when every clause the loop can derive is a ground non-equality.

        Then usable never changes, products are plain ground ids, and a
        derived unit can only conflict with an input unit.
        """
        if self.config.max_weight is not None:
            return False
        if any(not c.ground or c.has_positive_equality for c in self.sos):
            return False
        if not (_closed_equalities(self.usable_eqs) and _closed_equalities(self.hot)):
            return False
        classes = {(c.literals[0].positive, c.literals[0].predicate)
                   for c in self.sos if c.is_unit}
        opposite = {(not s, p) for s, p in classes}
        return not (opposite & classes or opposite & self._open_units.keys())

    def _run_ground(self) -> ProverResult:
        stats = self.stats
        kept = self._kept
        records: Dict[int, tuple] = {}
        inputs = dict(self.clauses)
        eqs = tuple(self.usable_eqs)
        ctx_u = _context(tuple(c.literals for c in eqs)) if eqs else None
        ctx_h = _context(self._hot_key) if self.hot else None
        sources = (("para", ctx_u, eqs), ("hot", ctx_h, self.hot))
        self.clauses = _ClauseView(inputs, records, sources)
        targets: Dict[int, int] = {}
        for gid, c in self._ground_units.items():
            targets.setdefault(_complement_id(gid), c.id)
        base = self._next_id - 1
        sos = deque(self._gid[c.id] for c in self.sos)
        self.sos.clear()
        loop = self._flat_loop if self.config.heat_level == 1 else self._stack_loop
        status, final, partner, generated, given = loop(
            sos, ctx_u.ground_products if ctx_u else None,
            ctx_h.ground_products if ctx_h else None, kept, records, targets, base)
        stats.generated = generated
        stats.given = given
        stats.retained = len(records)
        self._next_id = base + generated + 1
        return self._finish(status, final, partner)

    def _flat_loop(self, sos, u_products, h_products, kept, records, targets, base):
        # heat level 1 unrolled: each retained product gets one hot pass
        limit = self.config.max_generated
        generated = given = 0
        popleft, push = sos.popleft, sos.append
        while sos and u_products:
            g = popleft()
            given += 1
            parent = kept[g]
            for tag, p in u_products(g):
                generated += 1
                if generated >= limit:
                    return Status.BUDGET_EXCEEDED, None, None, generated, given
                if p in kept:
                    continue
                cid = base + generated
                kept[p] = cid
                records[cid] = (p, parent, 0, tag)
                if p in targets:
                    return Status.PROOF, cid, targets[p], generated, given
                push(p)
                if h_products is None:
                    continue
                for htag, q in h_products(p):
                    generated += 1
                    if generated >= limit:
                        return Status.BUDGET_EXCEEDED, None, None, generated, given
                    if q in kept:
                        continue
                    qid = base + generated
                    kept[q] = qid
                    records[qid] = (q, cid, 1, htag)
                    if q in targets:
                        return Status.PROOF, qid, targets[q], generated, given
                    push(q)
        # without usable equalities the remaining givens produce nothing
        return Status.SATURATED, None, None, generated, given + len(sos)

    def _stack_loop(self, sos, u_products, h_products, kept, records, targets, base):
        limit = self.config.max_generated
        heat_level = self.config.heat_level
        generated = given = 0
        while sos and u_products:
            g = sos.popleft()
            given += 1
            stack = [(iter(u_products(g)), kept[g], 0, 0)]
            while stack:
                it, parent, depth, source = stack[-1]
                for tag, p in it:
                    generated += 1
                    if generated >= limit:
                        return Status.BUDGET_EXCEEDED, None, None, generated, given
                    if p in kept:
                        continue
                    cid = base + generated
                    kept[p] = cid
                    records[cid] = (p, parent, source, tag)
                    if p in targets:
                        return Status.PROOF, cid, targets[p], generated, given
                    sos.append(p)
                    if h_products is not None and depth < heat_level:
                        stack.append((iter(h_products(p)), cid, depth + 1, 1))
                        break
                else:
                    stack.pop()
        return Status.SATURATED, None, None, generated, given + len(sos)

    def _admit(self, c: Clause) -> bool:
        key = self._key(c)
        if key in self._kept:
            return False
        self._kept[key] = c.id
        self.clauses[c.id] = c
        if c.is_unit:
            self._index_unit(c, self._gid.get(c.id))
        return True

    def run(self) -> ProverResult:
        if self._result is not None:
            return self._result
        problem = self.problem
        if not problem.sos:
            raise ProverError("the set of support is empty")
        start = time.perf_counter()
        gc_was_enabled = gc.isenabled()
        # the clause store is acyclic; generational scans only cost time here
        gc.disable()
        try:
            for c in problem.passive:
                self.clauses[c.id] = c
                if c.is_unit:
                    self._index_unit(c, ground_id(c.literals) if c.ground else None)
            for c in problem.hot:
                self.clauses[c.id] = c
                if c.ground:
                    self._gid[c.id] = ground_id(c.literals)
            for c in problem.usable:
                if self._admit(c):
                    self.usable.append(c)
                    if c.has_positive_equality:
                        self.usable_eqs.append(c)
            for c in problem.sos:
                if self._admit(c):
                    self.sos.append(c)
            for c in [*self.usable, *self.sos]:
                if c.is_unit:
                    partner = self._conflict(c, self._gid.get(c.id))
                    if partner is not None and partner is not c:
                        return self._finish(Status.PROOF, c.id, partner.id)
            if self._ground_mode():
                return self._run_ground()
            return self._run_general()
        except _Stop:
            return self._result
        finally:
            if gc_was_enabled:
                gc.enable()
            self.stats.wall_ms = (time.perf_counter() - start) * 1000.0


def _count_inferences(clauses: Dict[int, Clause], roots: Sequence[int]) -> int:
    seen = set()
    stack = list(roots)
    while stack:
        cid = stack.pop()
        if cid in seen:
            continue
        seen.add(cid)
        origin = clauses[cid].origin
        if isinstance(origin, InferenceOrigin):
            stack.extend((origin.into_id, origin.from_id))
    return sum(1 for cid in seen if isinstance(clauses[cid].origin, InferenceOrigin))


def run(problem, config: Optional[ProverConfig] = None) -> ProverResult:
    return Prover(problem, config).run()


def proof_chain(result: ProverResult) -> List[Clause]:
    """Into-parent chain from an input clause to the refuting clause."""
    if not result.proved:
        raise ProverError("result is not a proof")
    chain = []
    cid = result.final_clause_id
    while True:
        c = result.clauses.get(cid)
        if c is None:
            raise ProverError(f"provenance chain broken at clause {cid}")
        chain.append(c)
        if not isinstance(c.origin, InferenceOrigin):
            break
        if c.origin.into_id >= cid:
            raise ProverError(f"clause {cid} has a parent that is not older")
        cid = c.origin.into_id
    chain.reverse()
    return chain


def extract_moves(result: ProverResult, problem=None):
    """Consecutive ``(before, after)`` boards along a puzzle proof."""
    from .puzzle import decode

    boards = [decode(c.literals[0]) for c in proof_chain(result)]
    return list(zip(boards, boards[1:]))
