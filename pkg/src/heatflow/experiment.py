"""The heat-flow experiment: a seeded board suite run under several hot lists."""

from __future__ import annotations

import csv
import enum
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from .parser import ProblemSpec
from .prover import ProverConfig, Status, run
from .puzzle import (
    Board,
    encode,
    horizontal_move_eq,
    is_solvable,
    random_board,
    vertical_move_eq,
)

CSV_HEADER = ("board_id", "width", "cells", "flow", "solvable", "result",
              "generated", "retained", "given", "moves", "wall_ms")


class FlowConfig(enum.Enum):
    """Which move equalities go on the hot list."""

    NONE = "none"
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    BOTH = "both"

    @classmethod
    def parse(cls, text: str) -> "FlowConfig":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown flow {text!r} (expected one of {names})") from None


FLOW_ORDER = {f: i for i, f in enumerate(FlowConfig)}
DEFAULT_FLOWS = (FlowConfig.NONE, FlowConfig.VERTICAL, FlowConfig.HORIZONTAL)


class AreaLabel(enum.Enum):
    A = "A"  # only the vertical flow pays off
    B = "B"  # only the horizontal flow
    C = "C"  # both
    D = "D"  # neither


@dataclass(frozen=True)
class RunRecord:
    board_id: int
    board: Board
    flow: FlowConfig
    result: Status
    generated: int
    retained: int
    given: int
    moves: Optional[int]
    wall_ms: float

    @property
    def solvable(self) -> bool:
        return is_solvable(self.board)


class CsvError(ValueError):
    def __init__(self, message: str, row: int):
        super().__init__(f"row {row}: {message}")
        self.row = row


def generate_suite(n: int, base_seed: int = 0, width: int = 3) -> List[Board]:
    """Boards from seeds ``base_seed .. base_seed + n - 1``; board ``i`` has id ``i + 1``."""
    if n < 1:
        raise ValueError("suite size must be at least 1")
    return [random_board(base_seed + i, width) for i in range(n)]


def build_problem(board: Board, flow: FlowConfig) -> ProblemSpec:
    h = horizontal_move_eq(board.width)
    v = vertical_move_eq(board.width)
    hot = {
        FlowConfig.NONE: [],
        FlowConfig.VERTICAL: [v],
        FlowConfig.HORIZONTAL: [h],
        FlowConfig.BOTH: [v, h],
    }[flow]
    return ProblemSpec.from_literals(
        usable=[h.literals, v.literals],
        sos=[encode(board)],
        hot=[c.literals for c in hot],
        passive=[encode(Board.goal(board.width)).negate()],
    )


def run_board(board_id: int, board: Board, flow: FlowConfig,
              config: Optional[ProverConfig] = None) -> RunRecord:
    res = run(build_problem(board, flow), config)
    s = res.stats
    return RunRecord(board_id, board, flow, res.status, s.generated, s.retained, s.given,
                     s.proof_moves, s.wall_ms)


def _run_job(job) -> List[RunRecord]:
    board_id, board, flows, config = job
    return [run_board(board_id, board, f, config) for f in flows]


def default_workers() -> int:
    text = os.environ.get("HEATFLOW_WORKERS", "")
    try:
        return max(1, int(text)) if text else 1
    except ValueError:
        return 1


def run_experiment(suite: Sequence[Board], flows: Iterable[FlowConfig] = DEFAULT_FLOWS,
                   config: Optional[ProverConfig] = None,
                   workers: Optional[int] = None, progress=None) -> List[RunRecord]:
    """Run every board under every flow; records sorted by (board_id, flow).

    Each board runs its flows in one worker. ``progress``, if given, is
    called with the number of finished boards.
    """
    if not suite:
        raise ValueError("the suite is empty")
    flows = sorted(set(flows), key=FLOW_ORDER.get)
    config = config or ProverConfig()
    workers = default_workers() if workers is None else max(1, workers)
    jobs = [(i + 1, b, flows, config) for i, b in enumerate(suite)]
    records: List[RunRecord] = []
    if workers == 1 or len(jobs) == 1:
        results = map(_run_job, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (workers * 8)))
    try:
        for done, batch in enumerate(results, 1):
            records.extend(batch)
            if progress is not None:
                progress(done)
    finally:
        if pool is not None:
            pool.shutdown()
    records.sort(key=lambda r: (r.board_id, FLOW_ORDER[r.flow]))
    return records


def classify(record_none: RunRecord, record_v: RunRecord, record_h: RunRecord,
             theta: float = 0.9) -> AreaLabel:
    """Area of a board from its baseline, vertical and horizontal runs."""
    ids = {record_none.board_id, record_v.board_id, record_h.board_id}
    if len(ids) != 1:
        raise ValueError(f"records belong to different boards: {sorted(ids)}")
    got = (record_none.flow, record_v.flow, record_h.flow)
    if got != DEFAULT_FLOWS:
        raise ValueError(f"expected flows none, vertical, horizontal; got {[f.value for f in got]}")
    limit = theta * record_none.generated
    vertical = record_v.generated <= limit
    horizontal = record_h.generated <= limit
    if vertical and horizontal:
        return AreaLabel.C
    if vertical:
        return AreaLabel.A
    if horizontal:
        return AreaLabel.B
    return AreaLabel.D


def by_board(records: Iterable[RunRecord]) -> Dict[int, Dict[FlowConfig, RunRecord]]:
    out: Dict[int, Dict[FlowConfig, RunRecord]] = {}
    for r in records:
        out.setdefault(r.board_id, {})[r.flow] = r
    return out


def classify_all(records: Iterable[RunRecord], theta: float = 0.9) -> Dict[int, AreaLabel]:
    """Labels for every board that has all three of none/vertical/horizontal."""
    out = {}
    for board_id, flows in by_board(records).items():
        if all(f in flows for f in DEFAULT_FLOWS):
            out[board_id] = classify(*(flows[f] for f in DEFAULT_FLOWS), theta=theta)
    return out


# -- CSV ---------------------------------------------------------------------

def _row(r: RunRecord) -> List[str]:
    return [
        str(r.board_id), str(r.board.width), r.board.flat("-"), r.flow.value,
        "true" if r.solvable else "false", r.result.value,
        str(r.generated), str(r.retained), str(r.given),
        "" if r.moves is None else str(r.moves), repr(r.wall_ms),
    ]


def write_csv(records: Iterable[RunRecord], out: Union[str, os.PathLike, TextIO]) -> None:
    if isinstance(out, (str, os.PathLike)):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            write_csv(records, fh)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(_row(r))


def csv_text(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def _int(text: str, name: str, row: int, minimum: int = 0) -> int:
    try:
        v = int(text)
    except ValueError:
        raise CsvError(f"{name} is not an integer: {text!r}", row) from None
    if v < minimum:
        raise CsvError(f"{name} must be at least {minimum}: {v}", row)
    return v


def _parse_row(fields: List[str], row: int) -> RunRecord:
    if len(fields) != len(CSV_HEADER):
        raise CsvError(f"expected {len(CSV_HEADER)} fields, found {len(fields)}", row)
    (board_id, width, cells, flow, solvable, result, generated, retained, given, moves,
     wall_ms) = fields
    w = _int(width, "width", row, 2)
    try:
        board = Board.parse(f"{w}:{cells}")
    except ValueError as e:
        raise CsvError(str(e), row) from None
    try:
        flow_v = FlowConfig.parse(flow)
        status = Status(result)
        wall = float(wall_ms)
    except ValueError as e:
        raise CsvError(str(e), row) from None
    if solvable not in ("true", "false"):
        raise CsvError(f"solvable must be true or false: {solvable!r}", row)
    if (solvable == "true") != is_solvable(board):
        raise CsvError("solvable column disagrees with the board", row)
    return RunRecord(
        _int(board_id, "board_id", row), board, flow_v, status,
        _int(generated, "generated", row), _int(retained, "retained", row),
        _int(given, "given", row), _int(moves, "moves", row) if moves else None, wall)


def read_csv(source: Union[str, os.PathLike, TextIO]) -> List[RunRecord]:
    """Parse records; rows are numbered from 1 at the header."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_csv(fh)
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise CsvError("empty file, expected a header", 1)
    if tuple(header) != CSV_HEADER:
        raise CsvError(f"unexpected header {','.join(header)}", 1)
    records = []
    seen: Dict[Tuple[int, FlowConfig], int] = {}
    for row, fields in enumerate(reader, 2):
        if not fields:
            continue
        r = _parse_row(fields, row)
        key = (r.board_id, r.flow)
        if key in seen:
            raise CsvError(f"duplicate record for board {r.board_id} flow {r.flow.value} "
                           f"(first at row {seen[key]})", row)
        seen[key] = row
        records.append(r)
    return records
