"""Reader and printer for the clause-list input language.

::

    list(usable).
    EQUAL(l(hole,l(n(x),y)),l(n(x),l(hole,y))).
    end_of_list.

Identifiers starting with ``u``..``z`` are variables. ``%`` starts a line
comment. Literals of one clause are separated by ``|``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .clause import Clause, InputOrigin, Literal
from .term import App, Symbol, Term, Var, is_variable_name, variables

LIST_NAMES = ("usable", "sos", "hot", "passive", "demodulators")

_TOKEN = re.compile(r"\s+|%[^\n]*|(?P<ident>[A-Za-z0-9_$]+)|(?P<punct>[(),.|-])")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ProblemSpec:
    usable: List[Clause] = field(default_factory=list)
    sos: List[Clause] = field(default_factory=list)
    hot: List[Clause] = field(default_factory=list)
    passive: List[Clause] = field(default_factory=list)

    @classmethod
    def from_literals(cls, usable=(), sos=(), hot=(), passive=()) -> "ProblemSpec":
        """Build a problem from literal sequences, numbering clauses from 1."""
        spec = cls()
        next_id = 1
        for name, items in (("usable", usable), ("sos", sos), ("hot", hot), ("passive", passive)):
            target = getattr(spec, name)
            for lits in items:
                if isinstance(lits, Literal):
                    lits = (lits,)
                target.append(Clause(next_id, lits, InputOrigin(name)))
                next_id += 1
        check_arities(spec.all_clauses())
        return spec

    def all_clauses(self) -> List[Clause]:
        return [*self.usable, *self.sos, *self.hot, *self.passive]


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind is not None:
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.arity: Dict[str, Tuple[int, _Token]] = {}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, message: str, tok: Optional[_Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def ident(self) -> _Token:
        tok = self.peek()
        if tok.kind != "ident":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected an identifier, found {found}")
        return self.take()

    def symbol(self, tok: _Token, arity: int) -> Symbol:
        seen = self.arity.get(tok.text)
        if seen is None:
            self.arity[tok.text] = (arity, tok)
        elif seen[0] != arity:
            raise self.error(
                f"{tok.text} used with {arity} argument(s), but with {seen[0]} at "
                f"line {seen[1].line}, column {seen[1].column}", tok)
        return Symbol(tok.text, arity)

    def term(self) -> Term:
        tok = self.ident()
        args = self.arguments()
        if is_variable_name(tok.text):
            if args is not None:
                raise self.error(f"variable {tok.text} cannot take arguments", tok)
            return Var(tok.text)
        args = args or ()
        return App(self.symbol(tok, len(args)), args)

    def arguments(self) -> Optional[Tuple[Term, ...]]:
        if self.peek().text != "(":
            return None
        self.take()
        args = [self.term()]
        while self.peek().text == ",":
            self.take()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def literal(self) -> Literal:
        positive = True
        if self.peek().text == "-":
            self.take()
            positive = False
        tok = self.ident()
        if is_variable_name(tok.text):
            raise self.error(f"predicate expected, found variable {tok.text}", tok)
        args = self.arguments() or ()
        return Literal(positive, self.symbol(tok, len(args)), args)

    def clause_literals(self) -> Tuple[Literal, ...]:
        lits = [self.literal()]
        while self.peek().text == "|":
            self.take()
            lits.append(self.literal())
        self.expect(".")
        return tuple(lits)

    def parse(self) -> ProblemSpec:
        spec = ProblemSpec()
        next_id = 1
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text != "list":
                raise self.error(f"expected 'list(...)' declaration, found {tok.text!r}")
            self.take()
            self.expect("(")
            name_tok = self.ident()
            if name_tok.text not in LIST_NAMES:
                raise self.error(f"unknown list name {name_tok.text!r}", name_tok)
            self.expect(")")
            self.expect(".")
            while True:
                tok = self.peek()
                if tok.kind == "eof":
                    raise self.error("missing end_of_list")
                if tok.text == "end_of_list":
                    self.take()
                    self.expect(".")
                    break
                if name_tok.text == "demodulators":
                    raise self.error("demodulators are not supported; the list must be empty")
                lits = self.clause_literals()
                getattr(spec, name_tok.text).append(
                    Clause(next_id, lits, InputOrigin(name_tok.text)))
                next_id += 1
        return spec


def parse(text: str) -> ProblemSpec:
    return _Parser(text).parse()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input {p.peek().text!r}")
    return t


def parse_clause(text: str, id: int = 1, list_name: str = "sos") -> Clause:
    """A single clause, with or without the trailing period."""
    text = text.strip()
    if not text.endswith("."):
        text += "."
    p = _Parser(text)
    lits = p.clause_literals()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input {p.peek().text!r}")
    return Clause(id, lits, InputOrigin(list_name))


def check_arities(clauses: Iterable[Clause]) -> None:
    seen: Dict[str, int] = {}

    def visit(name: str, arity: int) -> None:
        if seen.setdefault(name, arity) != arity:
            raise ValueError(f"{name} used with arities {seen[name]} and {arity}")

    for c in clauses:
        for lit in c.literals:
            visit(lit.predicate.name, lit.predicate.arity)
            stack = list(lit.args)
            while stack:
                t = stack.pop()
                if type(t) is App:
                    visit(t.head.name, t.head.arity)
                    stack.extend(t.args)


# -- printing ---------------------------------------------------------------

def _var_names(vs: Sequence[Var]) -> Dict[Var, str]:
    names: Dict[Var, str] = {}
    taken = set()
    fallback = 0
    for v in vs:
        name = v.name if v.index == 0 else f"{v.name}{v.index}"
        if not is_variable_name(name) or not name.isidentifier() or name in taken:
            while True:
                fallback += 1
                name = f"x{fallback}"
                if name not in taken:
                    break
        taken.add(name)
        names[v] = name
    return names


def _fmt_term(t: Term, names: Dict[Var, str]) -> str:
    if type(t) is Var:
        return names[t]
    if not t.args:
        return t.head.name
    return f"{t.head.name}({','.join(_fmt_term(a, names) for a in t.args)})"


def _fmt_literal(lit: Literal, names: Dict[Var, str]) -> str:
    sign = "" if lit.positive else "-"
    if not lit.args:
        return sign + lit.predicate.name
    return f"{sign}{lit.predicate.name}({','.join(_fmt_term(a, names) for a in lit.args)})"


def _collect_vars(lits: Sequence[Literal]) -> List[Var]:
    out: Dict[Var, None] = {}
    for lit in lits:
        for a in lit.args:
            for v in variables(a):
                out.setdefault(v)
    return list(out)


def format(x: Union[Term, Literal, Clause, ProblemSpec]) -> str:
    """Concrete syntax for a term, literal, clause (with period) or problem."""
    if isinstance(x, ProblemSpec):
        return format_problem(x)
    if isinstance(x, Clause):
        names = _var_names(_collect_vars(x.literals))
        return " | ".join(_fmt_literal(l, names) for l in x.literals) + "."
    if isinstance(x, Literal):
        return _fmt_literal(x, _var_names(_collect_vars((x,))))
    return _fmt_term(x, _var_names(variables(x)))


def format_problem(spec: ProblemSpec) -> str:
    blocks = []
    for name in ("usable", "sos", "hot", "passive"):
        clauses = getattr(spec, name)
        if not clauses:
            continue
        lines = [f"list({name})."] + [format(c) for c in clauses] + ["end_of_list."]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""
