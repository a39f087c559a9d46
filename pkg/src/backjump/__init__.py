"""Chronological backtracking and conflict-directed backjumping for finite-domain CSPs."""

from .conflicts import (
    ConflictSet,
    ConflictSlot,
    Explanation,
    conflict_union,
    culprit,
    get_conflict,
    merge_explanation,
    save_conflict,
    solution_conflict,
)
from .engines import (
    SearchOutcome,
    SearchStats,
    Strategy,
    Termination,
    first_solution_contains_queens,
    format_trace,
    solve,
)
from .model import (
    Assignment,
    Check,
    CspInstance,
    DiagDiff,
    NotEqual,
    PartialSolution,
    Satisfied,
    Violated,
    check,
    consistent,
)
from .oracle import enumerate_all
from .problems import paper_problem, parse_instance, queens, serialize_instance

__all__ = [name for name in dir() if not name.startswith("_")]
