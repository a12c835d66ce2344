"""Compression of effective enumerations.

Finite enumeration traces, the strong and gainless compressors, invariant
checkers over joint (A, D) runs, the k-even positional game with winning
strategies and a horizon-bounded solver, and a priority-construction density
simulator with pluggable oracles.
"""

from .checks import CheckReport, run_checks
from .density import DensityState, load_scenario, run_construction
from .gainless import TargetRecord, compress_gainless
from .game import GameConfig, GameState, apply_move, legal_moves, solve
from .strong import compress_iterated, compress_strong
from .table import Block, TableView, label_blocks
from .traces import (
    EnumerationTrace,
    JointRun,
    TraceError,
    generate_trace,
    normalize_trace,
    parse_trace,
    render_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CheckReport",
    "DensityState",
    "EnumerationTrace",
    "GameConfig",
    "GameState",
    "JointRun",
    "TableView",
    "TargetRecord",
    "TraceError",
    "apply_move",
    "compress_gainless",
    "compress_iterated",
    "compress_strong",
    "generate_trace",
    "label_blocks",
    "legal_moves",
    "load_scenario",
    "normalize_trace",
    "parse_trace",
    "render_trace",
    "run_checks",
    "run_construction",
    "solve",
]
