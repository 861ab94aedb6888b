"""Command-line entry point: ``heatflow {check,gen,solve,experiment,plot}``."""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .experiment import (
    DEFAULT_FLOWS,
    CsvError,
    FlowConfig,
    build_problem,
    classify_all,
    default_workers,
    generate_suite,
    read_csv,
    run_experiment,
    write_csv,
)
from .parser import ParseError, ProblemSpec, parse
from .prover import ProverConfig, Status, extract_moves, run
from .puzzle import (
    STATE,
    Board,
    DecodeError,
    apply_move,
    decode,
    encode,
    inversions,
    is_solvable,
    legal_moves,
)

EXIT_OK = 0
EXIT_UNPROVED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4


class _InputError(Exception):
    pass


def _board(text: str) -> Board:
    try:
        return Board.parse(text)
    except ValueError as e:
        raise _InputError(f"bad board {text!r}: {e}") from None


def _flows(text: str) -> List[FlowConfig]:
    try:
        return [FlowConfig.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _flow(text: str) -> FlowConfig:
    try:
        return FlowConfig.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _fraction(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < v <= 1.0:
        raise argparse.ArgumentTypeError("theta must be in (0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heatflow", description=(
        "Paramodulation prover for sliding-tile puzzles with hot-list heat flow."))
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("check", help="inversion count and solvability of a board")
    c.add_argument("board", help='flat board text, e.g. "3:2,3,6,1,7,8,5,4,0"')

    g = sub.add_parser("gen", help="print a seeded suite of solvable boards")
    g.add_argument("-n", type=_positive, default=500)
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--out", help="output file (default: stdout)")

    s = sub.add_parser("solve", help="run the prover on a board or an input file")
    s.add_argument("target", help="flat board text or path to a clause-list file")
    s.add_argument("--flow", type=_flow, default=FlowConfig.NONE,
                   help="hot list: none, vertical, horizontal or both")
    s.add_argument("--budget", type=_positive, default=ProverConfig.max_generated,
                   help="maximum generated clauses")
    s.add_argument("--max-weight", type=_positive, default=None)
    s.add_argument("--heat-level", type=_positive, default=1)
    s.add_argument("--show-moves", action="store_true", help="replay the proof move by move")
    s.add_argument("--allow-saturation", action="store_true",
                   help="exit 0 when the search saturates without a proof")

    e = sub.add_parser("experiment", help="run the suite under several heat flows")
    e.add_argument("-n", type=_positive, default=500)
    e.add_argument("--seed", type=_seed, default=0)
    e.add_argument("--width", type=int, default=3)
    e.add_argument("--flows", type=_flows, default=list(DEFAULT_FLOWS),
                   help="comma-separated flows (default: none,vertical,horizontal)")
    e.add_argument("--budget", type=_positive, default=ProverConfig.max_generated)
    e.add_argument("--csv", "--csv-out", dest="csv_out", required=True, help="CSV output path")
    e.add_argument("--svg", "--svg-out", dest="svg_out", help="also render the default scatter plot")
    e.add_argument("--workers", type=_positive, default=None,
                   help="parallel processes (default: $HEATFLOW_WORKERS or 1)")
    e.add_argument("--quiet", action="store_true")

    pl = sub.add_parser("plot", help="scatter plot of a results CSV")
    pl.add_argument("--csv", "--csv-in", dest="csv_in", required=True)
    pl.add_argument("--x-flow", type=_flow, default=FlowConfig.VERTICAL)
    pl.add_argument("--y-flow", type=_flow, default=FlowConfig.HORIZONTAL)
    pl.add_argument("--svg", "--svg-out", dest="svg_out", required=True)
    pl.add_argument("--log-axes", action="store_true")
    pl.add_argument("--theta", type=_fraction, default=None,
                   help="color points by area with this threshold")
    return p


def cmd_check(args, out) -> int:
    b = _board(args.board)
    verdict = "SOLVABLE" if is_solvable(b) else "UNSOLVABLE"
    print(f"inversions={inversions(b)} {verdict}", file=out)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.width < 2:
        raise _InputError("width must be at least 2")
    lines = [str(b) for b in generate_suite(args.n, args.seed, args.width)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _load_problem(args) -> ProblemSpec:
    target = args.target
    if os.path.exists(target):
        with open(target, encoding="utf-8") as fh:
            spec = parse(fh.read())
        if args.flow is not FlowConfig.NONE:
            raise _InputError("--flow applies to board arguments; put hot clauses in the file")
        if not spec.sos:
            raise _InputError(f"{target}: list(sos) is empty")
        if not spec.passive:
            # the goal is the solved board of the same width as the first STATE fact
            start = next((c.literals[0] for c in spec.sos
                          if c.is_unit and c.literals[0].predicate is STATE), None)
            if start is None:
                raise _InputError(f"{target}: no STATE fact to derive a goal from")
            goal = encode(Board.goal(decode(start).width)).negate()
            spec = ProblemSpec.from_literals(
                usable=[c.literals for c in spec.usable], sos=[c.literals for c in spec.sos],
                hot=[c.literals for c in spec.hot], passive=[goal])
        return spec
    if ":" not in target:
        raise _InputError(f"{target}: no such file, and not a board")
    return build_problem(_board(target), args.flow)


def _direction(before: Board, after: Board) -> str:
    for m in legal_moves(before):
        if apply_move(before, m) == after:
            return m.direction
    return "?"


def cmd_solve(args, out) -> int:
    spec = _load_problem(args)
    config = ProverConfig(max_generated=args.budget, max_weight=args.max_weight,
                          heat_level=args.heat_level)
    res = run(spec, config)
    s = res.stats
    moves = "" if s.proof_moves is None else str(s.proof_moves)
    print(f"verdict: {res.status.value}", file=out)
    print(f"generated={s.generated} retained={s.retained} given={s.given} moves={moves} "
          f"wall_ms={s.wall_ms:.1f}", file=out)
    if res.proved and args.show_moves:
        steps = extract_moves(res, spec)
        if steps:
            print(f"start: {steps[0][0]}", file=out)
        for i, (before, after) in enumerate(steps, 1):
            print(f"{i:>3} {_direction(before, after):<5} {after}", file=out)
    if res.status is Status.PROOF:
        return EXIT_OK
    if res.status is Status.BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_OK if args.allow_saturation else EXIT_UNPROVED


def cmd_experiment(args, out) -> int:
    if args.width < 2:
        raise _InputError("width must be at least 2")
    suite = generate_suite(args.n, args.seed, args.width)
    workers = args.workers or default_workers()

    def progress(done):
        if not args.quiet and (done % 25 == 0 or done == len(suite)):
            print(f"{done}/{len(suite)} boards", file=sys.stderr)

    records = run_experiment(suite, args.flows, ProverConfig(max_generated=args.budget),
                             workers=workers, progress=progress)
    write_csv(records, args.csv_out)
    counts = {}
    for r in records:
        counts[r.result] = counts.get(r.result, 0) + 1
    summary = " ".join(f"{k.value}={v}" for k, v in sorted(counts.items(), key=lambda kv: kv[0].value))
    print(f"records={len(records)} {summary} csv={args.csv_out}", file=out)
    if args.svg_out:
        from .plotting import emit_scatter_svg

        ps = emit_scatter_svg(records, args.svg_out)
        print(f"points={ps.points} svg={args.svg_out}", file=out)
    return EXIT_OK


def cmd_plot(args, out) -> int:
    from .plotting import emit_scatter_svg

    try:
        records = read_csv(args.csv_in)
    except CsvError as e:
        raise _InputError(f"{args.csv_in}: {e}") from None
    ps = emit_scatter_svg(records, args.svg_out, args.x_flow, args.y_flow, args.log_axes,
                          args.theta)
    print(f"points={ps.points} skipped={ps.skipped} "
          f"x={ps.x_range[0]:g}..{ps.x_range[1]:g} y={ps.y_range[0]:g}..{ps.y_range[1]:g} "
          f"svg={args.svg_out}", file=out)
    if args.theta is not None:
        labels = classify_all(records, args.theta)
        tally = {}
        for label in labels.values():
            tally[label.value] = tally.get(label.value, 0) + 1
        print(" ".join(f"{k}={tally.get(k, 0)}" for k in "ABCD"), file=out)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "gen": cmd_gen,
    "solve": cmd_solve,
    "experiment": cmd_experiment,
    "plot": cmd_plot,
}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (ParseError, DecodeError, _InputError) as e:
        print(f"heatflow: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"heatflow: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
