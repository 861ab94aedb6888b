"""Sliding-tile boards and their encoding as STATE terms.

A board is stored row-major with ``0`` for the hole. The term encoding is a
right-nested ``l`` list with the constant ``end`` after every row; the last
``end`` doubles as the list terminator::

    STATE(l(n(1),l(n(2),l(n(3),l(end, ... l(n(8),l(hole,end)) ...)))))
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .clause import EQUAL, Clause, InputOrigin, Literal
from .term import App, Symbol, Term, Var, const

HOLE = 0

L = Symbol("l", 2)
N = Symbol("n", 1)
HOLE_SYM = Symbol("hole", 0)
END_SYM = Symbol("end", 0)
STATE = Symbol("STATE", 1)

HOLE_TERM = App(HOLE_SYM)
END_TERM = App(END_SYM)

_tile_terms: Dict[int, App] = {}


class DecodeError(ValueError):
    """A STATE term that does not describe a valid board."""

    def __init__(self, message: str, position: Tuple[int, ...] = ()):
        where = ".".join(map(str, position)) if position else "root"
        super().__init__(f"{message} (at {where})")
        self.position = position


def tile_term(k: int) -> App:
    t = _tile_terms.get(k)
    if t is None:
        t = _tile_terms[k] = App(N, (const(str(k)),))
    return t


@dataclass(frozen=True)
class Board:
    width: int
    cells: Tuple[int, ...]

    def __post_init__(self):
        if self.width < 2:
            raise ValueError("board width must be at least 2")
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        if sorted(cells) != list(range(self.width * self.width)):
            raise ValueError(
                f"cells must be a permutation of 0..{self.width * self.width - 1}: {cells}")

    @classmethod
    def goal(cls, width: int) -> "Board":
        return cls(width, tuple(range(1, width * width)) + (HOLE,))

    @classmethod
    def parse(cls, text: str) -> "Board":
        """Parse the flat text form ``"3:1,3,5,4,6,8,7,2,0"``."""
        head, sep, body = text.strip().partition(":")
        if not sep:
            raise ValueError(f"expected 'width:cells', got {text!r}")
        try:
            width = int(head)
            cells = tuple(int(c) for c in body.replace("-", ",").split(","))
        except ValueError:
            raise ValueError(f"malformed board text {text!r}") from None
        if len(cells) != width * width:
            raise ValueError(f"expected {width * width} cells, got {len(cells)}")
        return cls(width, cells)

    @property
    def hole_index(self) -> int:
        return self.cells.index(HOLE)

    @property
    def is_goal(self) -> bool:
        return self == Board.goal(self.width)

    def flat(self, sep: str = ",") -> str:
        return sep.join(map(str, self.cells))

    def __str__(self) -> str:
        return f"{self.width}:{self.flat()}"

    def render(self) -> str:
        w = self.width
        pad = len(str(w * w - 1))
        rows = []
        for r in range(w):
            row = self.cells[r * w:(r + 1) * w]
            rows.append(" ".join("·".rjust(pad) if c == HOLE else str(c).rjust(pad) for c in row))
        return "\n".join(rows)


@dataclass(frozen=True)
class Move:
    """The hole moves ``direction`` from ``from_index`` to ``to_index``."""

    direction: str
    from_index: int
    to_index: int

    @property
    def is_vertical(self) -> bool:
        return self.direction in ("up", "down")


def legal_moves(b: Board) -> List[Move]:
    w = b.width
    h = b.hole_index
    r, c = divmod(h, w)
    moves = []
    if r > 0:
        moves.append(Move("up", h, h - w))
    if r < w - 1:
        moves.append(Move("down", h, h + w))
    if c > 0:
        moves.append(Move("left", h, h - 1))
    if c < w - 1:
        moves.append(Move("right", h, h + 1))
    return moves


def apply_move(b: Board, m: Move) -> Board:
    if m not in legal_moves(b):
        raise ValueError(f"illegal move {m} for board {b}")
    cells = list(b.cells)
    cells[m.from_index], cells[m.to_index] = cells[m.to_index], cells[m.from_index]
    return Board(b.width, tuple(cells))


def successors(b: Board) -> List[Board]:
    return [apply_move(b, m) for m in legal_moves(b)]


def encode_term(b: Board) -> App:
    w = b.width
    elems: List[App] = []
    for r in range(w):
        for c in b.cells[r * w:(r + 1) * w]:
            elems.append(HOLE_TERM if c == HOLE else tile_term(c))
        if r < w - 1:
            elems.append(END_TERM)
    t = END_TERM
    for e in reversed(elems):
        t = App(L, (e, t))
    return t


def encode(b: Board) -> Literal:
    return Literal(True, STATE, (encode_term(b),))


def decode_term(t: Term) -> Board:
    elems: List[Tuple[Term, Tuple[int, ...]]] = []
    pos: Tuple[int, ...] = ()
    while type(t) is App and t.head is L:
        elems.append((t.args[0], pos + (1,)))
        t = t.args[1]
        pos = pos + (2,)
    if t != END_TERM:
        raise DecodeError("list must end with the constant end", pos)
    if not elems:
        raise DecodeError("not an l-list", pos)
    rows: List[List[int]] = [[]]
    for e, p in elems:
        if e == END_TERM:
            rows.append([])
        elif e == HOLE_TERM:
            rows[-1].append(HOLE)
        elif (type(e) is App and e.head is N and type(e.args[0]) is App
              and not e.args[0].args and e.args[0].head.name.isdigit()):
            rows[-1].append(int(e.args[0].head.name))
        else:
            raise DecodeError(f"unexpected list element {e!r}", p)
    width = len(rows)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DecodeError(f"row {i + 1} has {len(row)} cells, expected {width}")
    cells = tuple(c for row in rows for c in row)
    if width < 2:
        raise DecodeError("board width must be at least 2")
    if cells.count(HOLE) != 1:
        raise DecodeError(f"expected exactly one hole, found {cells.count(HOLE)}")
    if sorted(cells) != list(range(width * width)):
        raise DecodeError(f"tiles are not a permutation of 1..{width * width - 1}")
    return Board(width, cells)


def decode(lit: Literal) -> Board:
    if lit.predicate is not STATE:
        raise DecodeError(f"expected a STATE literal, got {lit.predicate.name}")
    return decode_term(lit.args[0])


def _chain(heads: Sequence[Term], tail: Term) -> Term:
    t = tail
    for h in reversed(heads):
        t = App(L, (h, t))
    return t


def _eq_clause(lhs: Term, rhs: Term, id: int) -> Clause:
    return Clause(id, (Literal(True, EQUAL, (lhs, rhs)),), InputOrigin("usable"), ground=False)


def horizontal_move_eq(width: int = 3, id: int = 1) -> Clause:
    """``EQUAL(l(hole,l(n(x),y)),l(n(x),l(hole,y)))``; the same for every width."""
    if width < 2:
        raise ValueError("width must be at least 2")
    x, y = Var("x"), Var("y")
    tile = App(N, (x,))
    return _eq_clause(_chain([HOLE_TERM, tile], y), _chain([tile, HOLE_TERM], y), id)


_SPACER_NAMES = ("x", "y", "z", "u")


def vertical_move_eq(width: int = 3, id: int = 2) -> Clause:
    """Hole swaps with the tile ``width + 1`` list cells later (one row down)."""
    if width < 2:
        raise ValueError("width must be at least 2")
    spacers = [Var(_SPACER_NAMES[i]) if i < len(_SPACER_NAMES) else Var(f"x{i}")
               for i in range(width)]
    w, v = Var("w"), Var("v")
    tile = App(N, (w,))
    lhs = _chain([HOLE_TERM, *spacers, tile], v)
    rhs = _chain([tile, *spacers, HOLE_TERM], v)
    return _eq_clause(lhs, rhs, id)


def inversions(b: Board) -> int:
    tiles = [c for c in b.cells if c != HOLE]
    count = 0
    for i, a in enumerate(tiles):
        for c in tiles[i + 1:]:
            if a > c:
                count += 1
    return count


def is_solvable(b: Board) -> bool:
    inv = inversions(b)
    if b.width % 2 == 1:
        return inv % 2 == 0
    # hole row counted from the bottom, 1-based; the goal has it in row 1
    row_from_bottom = b.width - b.hole_index // b.width
    return (inv + row_from_bottom) % 2 == 1


MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def random_board(seed: int, width: int = 3) -> Board:
    """Random solvable board with the hole in the last cell."""
    if width < 2:
        raise ValueError("width must be at least 2")
    rng = SplitMix64(seed)
    n = width * width - 1
    while True:
        tiles = list(range(1, n + 1))
        for i in range(n - 1, 0, -1):
            j = rng.below(i + 1)
            tiles[i], tiles[j] = tiles[j], tiles[i]
        b = Board(width, tuple(tiles) + (HOLE,))
        if is_solvable(b):
            return b


def _neighbour_table(width: int) -> List[List[int]]:
    table = []
    for h in range(width * width):
        r, c = divmod(h, width)
        nb = []
        if r > 0:
            nb.append(h - width)
        if r < width - 1:
            nb.append(h + width)
        if c > 0:
            nb.append(h - 1)
        if c < width - 1:
            nb.append(h + 1)
        table.append(nb)
    return table


def _bfs(start: Board, target: Optional[Tuple[int, ...]] = None):
    neighbours = _neighbour_table(start.width)
    dist = {start.cells: 0}
    if start.cells == target:
        return dist, 0
    queue = deque([(start.cells, start.hole_index)])
    while queue:
        cells, h = queue.popleft()
        d = dist[cells] + 1
        for j in neighbours[h]:
            nxt = list(cells)
            nxt[h], nxt[j] = nxt[j], HOLE
            key = tuple(nxt)
            if key not in dist:
                if key == target:
                    return dist, d
                dist[key] = d
                queue.append((key, j))
    return dist, None


def bfs_distances(start: Board) -> Dict[Tuple[int, ...], int]:
    """Breadth-first distance from ``start`` to every reachable cell tuple."""
    return _bfs(start)[0]


def bfs_oracle(b: Board) -> Optional[int]:
    """Minimal number of moves from ``b`` to the goal, ``None`` if unreachable."""
    return _bfs(b, Board.goal(b.width).cells)[1]


def iter_boards(width: int) -> Iterator[Board]:
    from itertools import permutations

    for cells in permutations(range(width * width)):
        yield Board(width, cells)
