"""One test per acceptance criterion, numbered 1 to 10."""

import random
import subprocess
import sys
import time
import xml.etree.ElementTree as ET

import pytest

from heatflow.clause import Clause, InputOrigin, Orientation, is_variant
from heatflow.experiment import (
    DEFAULT_FLOWS,
    FlowConfig,
    build_problem,
    by_board,
    csv_text,
    generate_suite,
    read_csv,
    run_experiment,
)
from heatflow.parser import format, parse, parse_clause
from heatflow.plotting import AXES_GID, POINTS_GID, emit_scatter_svg
from heatflow.prover import Prover, Status, extract_moves, para_into, run
from heatflow.puzzle import (
    Board,
    bfs_distances,
    decode,
    encode,
    horizontal_move_eq,
    inversions,
    is_solvable,
    iter_boards,
    successors,
    vertical_move_eq,
)

from conftest import HORIZONTAL_BLOCK, SOS_BLOCK, SOS_BOARD, VERTICAL_BLOCK

SVG = "{http://www.w3.org/2000/svg}"
SUITE_SIZE = 500


def test_01_parity_matches_bfs_exhaustively():
    start = time.perf_counter()
    reachable = bfs_distances(Board.goal(3))
    total = solvable = 0
    mismatches = []
    for b in iter_boards(3):
        total += 1
        s = is_solvable(b)
        solvable += s
        if s != (b.cells in reachable):
            mismatches.append(b)
    assert total == 362_880
    assert solvable == len(reachable) == 181_440
    assert mismatches == []
    assert time.perf_counter() - start < 60


def test_02_worked_paramodulants():
    given = parse_clause("P(gamma,h(f(alpha,y),beta))", id=1)
    from_eq = parse_clause("EQUAL(f(x,gamma),g(x)) | Q(x)", id=2)
    out = para_into(given, from_eq, Orientation.LEFT_TO_RIGHT) + para_into(given, from_eq, Orientation.RIGHT_TO_LEFT)
    expected = parse_clause("P(gamma,h(g(alpha),beta)) | Q(alpha)", id=99)
    assert len(out) == 1 and is_variant(out[0], expected)

    first = parse_clause("EQUAL(plus(x,0),x)", id=1)
    second = parse_clause("EQUAL(plus(minus(y),y),0)", id=2)
    out = para_into(second, first, Orientation.LEFT_TO_RIGHT) + para_into(second, first, Orientation.RIGHT_TO_LEFT)
    assert len(out) == 1 and is_variant(out[0], parse_clause("EQUAL(minus(0),0)", id=99))


def test_03_move_semantics_on_random_boards():
    rng = random.Random(20_240_517)
    eqs = [horizontal_move_eq(3), vertical_move_eq(3)]
    for _ in range(1000):
        cells = list(range(9))
        rng.shuffle(cells)
        b = Board(3, tuple(cells))
        given = Clause(1, (encode(b),), InputOrigin("sos"))
        got = set()
        for eq in eqs:
            for o in Orientation:
                got.update(decode(c.literals[0]) for c in para_into(given, eq, o))
        assert got == set(successors(b)), b


def test_04_proofs_replay_on_seeded_boards():
    start = time.perf_counter()
    goal = Board.goal(3)
    for board in generate_suite(100):
        res = run(build_problem(board, FlowConfig.NONE))
        assert res.status is Status.PROOF, board
        steps = extract_moves(res)
        assert steps[0][0] == board and steps[-1][1] == goal
        for before, after in steps:
            assert after in successors(before)
        assert res.stats.proof_moves == len(steps)
    assert time.perf_counter() - start < 120


@pytest.mark.slow
def test_05_unsolvable_boards_saturate():
    for board in generate_suite(20):
        cells = list(board.cells)
        cells[0], cells[1] = cells[1], cells[0]
        bad = Board(3, tuple(cells))
        assert not is_solvable(bad)
        prover = Prover(build_problem(bad, FlowConfig.NONE))
        res = prover.run()
        assert res.status is Status.SATURATED and not res.proved
        assert res.stats.generated < 5_000_000
        assert len(prover.state_clauses()) == len(bfs_distances(bad)) == 181_440


@pytest.fixture(scope="module")
def experiment_csvs(tmp_path_factory):
    """The full suite run in this process and again in a fresh interpreter."""
    tmp = tmp_path_factory.mktemp("experiment")
    first = run_experiment(generate_suite(SUITE_SIZE), DEFAULT_FLOWS)
    path = tmp / "second.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "heatflow", "experiment", "-n", str(SUITE_SIZE), "--seed", "0",
         "--flows", "none,vertical,horizontal", "--csv", str(path), "--quiet", "--workers", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return csv_text(first), path


def _without_wall_ms(text):
    return [line.rsplit(",", 1)[0] for line in text.splitlines()]


@pytest.mark.slow
def test_06_experiment_is_deterministic(experiment_csvs):
    first, path = experiment_csvs
    second = path.read_text()
    assert len(first.splitlines()) == 1 + 3 * SUITE_SIZE
    assert _without_wall_ms(first) == _without_wall_ms(second)


@pytest.mark.slow
def test_07_heat_flow_changes_counts(experiment_csvs):
    records = read_csv(experiment_csvs[1])
    boards = by_board(records)
    assert len(boards) == SUITE_SIZE
    changed = sum(1 for f in boards.values()
                  if f[FlowConfig.VERTICAL].generated != f[FlowConfig.NONE].generated
                  or f[FlowConfig.HORIZONTAL].generated != f[FlowConfig.NONE].generated)
    assert changed >= 0.8 * SUITE_SIZE
    counts = [r.generated for r in records]
    assert min(counts) > 0 and max(counts) >= 100 * min(counts)


def test_08_inversion_example():
    b = Board(3, (2, 3, 6, 1, 7, 8, 5, 4, 0))
    assert inversions(b) == 10
    assert is_solvable(b)


def test_09_parser_round_trip():
    text = HORIZONTAL_BLOCK + VERTICAL_BLOCK + SOS_BLOCK
    spec = parse(text)
    again = parse(format(spec))
    for a, b in zip(spec.all_clauses(), again.all_clauses(), strict=True):
        assert a.literals == b.literals
    for block in (HORIZONTAL_BLOCK, VERTICAL_BLOCK, SOS_BLOCK):
        assert "".join(format(parse(block)).split()) == "".join(block.split())
    (state,) = spec.sos
    assert decode(state.literals[0]) == SOS_BOARD == Board(3, (3, 2, 1, 8, 4, 7, 6, 5, 0))


def _frame(root):
    (g,) = [e for e in root.iter(SVG + "g") if e.get("id") == AXES_GID]
    d = g.find(SVG + "path").get("d").split()
    xs, ys = [float(t) for t in d[1::3]], [float(t) for t in d[2::3]]
    return min(xs), max(xs), min(ys), max(ys)


@pytest.mark.slow
def test_10_plot_of_full_experiment(experiment_csvs, tmp_path):
    records = read_csv(experiment_csvs[1])
    path = tmp_path / "scatter.svg"
    summary = emit_scatter_svg(records, path)
    boards = by_board(records)
    xs = [f[FlowConfig.VERTICAL].generated for f in boards.values()]
    ys = [f[FlowConfig.HORIZONTAL].generated for f in boards.values()]
    assert summary.points == SUITE_SIZE and summary.skipped == 0
    assert summary.x_range == (min(xs), max(xs))
    assert summary.y_range == (min(ys), max(ys))

    root = ET.parse(path).getroot()
    assert root.tag == SVG + "svg"
    (group,) = [e for e in root.iter(SVG + "g") if e.get("id") == POINTS_GID]
    pts = [(float(u.get("x")), float(u.get("y"))) for u in group.iter(SVG + "use")]
    assert len(pts) == SUITE_SIZE
    # extreme points sit on the frame: min/max data map to the axes edges
    left, right, top, bottom = _frame(root)
    px, py = [p[0] for p in pts], [p[1] for p in pts]
    assert min(px) == pytest.approx(left, abs=0.01)
    assert max(px) == pytest.approx(right, abs=0.01)
    assert min(py) == pytest.approx(top, abs=0.01)
    assert max(py) == pytest.approx(bottom, abs=0.01)
