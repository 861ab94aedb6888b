import os

from hypothesis import settings

from heatflow.parser import ProblemSpec
from heatflow.puzzle import Board, encode, horizontal_move_eq, vertical_move_eq

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# verbatim input blocks for an 8-puzzle run
HORIZONTAL_BLOCK = """list(usable).
EQUAL(l(hole,l(n(x),y)),l(n(x),l(hole,y))).
end_of_list.
"""

VERTICAL_BLOCK = """list(usable).
EQUAL(l(hole,l(x,l(y,l(z,l(u,l(n(w),v)))))),
l(n(w),l(x,l(y,l(z,l(u,l(hole,v))))))).
end_of_list.
"""

SOS_BLOCK = """list(sos).
STATE(l(n(3),l(n(2),l(n(1),
l(end,l(n(8),l(n(4),l(n(7),
l(end,l(n(6),l(n(5),
l(hole,end)))))))))))).
end_of_list.
"""

SOS_BOARD = Board(3, (3, 2, 1, 8, 4, 7, 6, 5, 0))


def puzzle_problem(board, hot=(), goal=None):
    h, v = horizontal_move_eq(board.width), vertical_move_eq(board.width)
    goal = goal or Board.goal(board.width)
    return ProblemSpec.from_literals(
        usable=[h.literals, v.literals],
        sos=[encode(board)],
        hot=[c.literals for c in hot],
        passive=[encode(goal).negate()],
    )
