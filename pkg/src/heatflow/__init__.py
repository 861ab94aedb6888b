"""Given-clause paramodulation prover with hot-list heat flow, for sliding-tile puzzles."""

from .clause import EQUAL, Clause, InferenceOrigin, InputOrigin, Literal, Orientation, is_variant, unit_conflict
from .experiment import (AreaLabel, FlowConfig, RunRecord, build_problem, classify, generate_suite,
                         run_experiment)
from .parser import ParseError, ProblemSpec, format, parse
from .prover import (ProverConfig, ProverResult, ProverStats, Status, extract_moves, hot_pass, para_into,
                     run)
from .puzzle import Board, bfs_oracle, decode, encode, inversions, is_solvable, random_board
from .term import App, Symbol, Var, apply, unify

__version__ = "0.1.0"

__all__ = [
    "App", "AreaLabel", "Board", "Clause", "EQUAL", "FlowConfig", "InferenceOrigin",
    "InputOrigin", "Literal", "Orientation", "ParseError", "ProblemSpec", "ProverConfig",
    "ProverResult", "ProverStats", "RunRecord", "Status", "Symbol", "Var", "apply",
    "bfs_oracle", "build_problem", "classify", "decode", "encode", "extract_moves", "format",
    "generate_suite", "hot_pass", "inversions", "is_solvable", "is_variant", "para_into", "parse",
    "random_board", "run", "run_experiment", "unify", "unit_conflict",
]
