"""Search strategies over an explicit choice-frame stack.

``chrono``  plain depth-first chronological backtracking.
``alg2``    backjumping; each frame keeps one explanation, the union of the
            reasons its values were eliminated.
``alg1``    backjumping; each frame keeps a (value, explanation) pair per
            eliminated value and unions them only when the frame runs dry.

All three visit variables in the instance's static order and values in
domain trial order. One *trial* is one value taken from a frame and submitted
to the consistency check.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .conflicts import (
    EMPTY,
    ConflictSet,
    ConflictSlot,
    Explanation,
    conflict_union,
    culprit,
    merge_explanation,
    solution_conflict,
)
from .model import CspInstance, PartialSolution, first_violation


class Strategy(str, enum.Enum):
    CHRONO = "chrono"
    ALG1 = "alg1"
    ALG2 = "alg2"


class Termination(str, enum.Enum):
    FIRST_FOUND = "FirstFound"
    EXHAUSTED = "Exhausted"
    UNSATISFIABLE = "Unsatisfiable"
    LIMIT_REACHED = "LimitReached"


STATS_KEYS = (
    "trials",
    "consistency_checks",
    "local_conflicts",
    "exhaustions",
    "backjumps",
    "solutions",
    "termination",
)


@dataclass
class SearchStats:
    trials: int = 0
    consistency_checks: int = 0
    local_conflicts: int = 0
    exhaustions: int = 0
    backjumps: int = 0
    solutions: int = 0


Solution = tuple[tuple[int, int], ...]


@dataclass
class SearchOutcome:
    solutions: list[Solution]
    stats: SearchStats
    termination: Termination

    def record(self) -> dict:
        """Flat stats record with the fixed key set, termination last."""
        rec = {k: getattr(self.stats, k) for k in STATS_KEYS[:-1]}
        rec["termination"] = self.termination.value
        return rec


# -- trace events -----------------------------------------------------------


@dataclass(frozen=True)
class Assign:
    var: int
    value: int

    def render(self) -> str:
        return f"A {self.var} {self.value}"


@dataclass(frozen=True)
class ConflictSaved:
    conflict: ConflictSet

    def render(self) -> str:
        return f"C {self.conflict.render()}"


@dataclass(frozen=True)
class Backjump:
    var: int

    def render(self) -> str:
        return f"J {self.var}"


@dataclass(frozen=True)
class Exhaust:
    var: int

    def render(self) -> str:
        return f"X {self.var}"


@dataclass(frozen=True)
class SolutionFound:
    assignments: Solution

    def render(self) -> str:
        if not self.assignments:
            return "S -"
        return "S " + ",".join(str(v) for _, v in self.assignments)


@dataclass(frozen=True)
class Fail:
    def render(self) -> str:
        return "F"


TraceEvent = Union[Assign, ConflictSaved, Backjump, Exhaust, SolutionFound, Fail]
TraceSink = Callable[[TraceEvent], None]


def format_trace(events: Iterable[TraceEvent]) -> str:
    return "".join(e.render() + "\n" for e in events)


def parse_mode(mode: str) -> Optional[int]:
    """Map ``first`` / ``all`` / ``limit:N`` to a solution cap (None = no cap)."""
    if mode == "first":
        return 1
    if mode == "all":
        return None
    if mode.startswith("limit:"):
        try:
            n = int(mode.split(":", 1)[1])
        except ValueError:
            n = 0
        if n >= 1:
            return n
    raise ValueError(f"bad mode {mode!r}: expected first, all or limit:N with N >= 1")


# -- engine -----------------------------------------------------------------


@dataclass
class _Frame:
    var: int
    remaining: deque
    explanation: Explanation = EMPTY
    elim_pairs: list = field(default_factory=list)


class _Stop(Exception):
    pass


class SearchEngine:
    """One search over one instance. Not reusable; build a new engine per run."""

    def __init__(
        self,
        instance: CspInstance,
        strategy: Strategy | str = Strategy.CHRONO,
        mode: str = "first",
        max_trials: Optional[int] = None,
        trace: Optional[TraceSink] = None,
    ):
        self.instance = instance
        self.strategy = Strategy(strategy)
        self.wanted = parse_mode(mode)
        self.max_trials = max_trials
        self.trace = trace
        self.stats = SearchStats()
        self.slot = ConflictSlot()
        self.solutions: list[Solution] = []
        self._p = PartialSolution()
        self._stack: list[_Frame] = []
        self._rank = instance.rank

    @property
    def _backjumping(self) -> bool:
        return self.strategy is not Strategy.CHRONO

    def _emit(self, event: TraceEvent) -> None:
        if self.trace is not None:
            self.trace(event)

    def _save(self, c: ConflictSet) -> None:
        self.slot.save(c)
        self._emit(ConflictSaved(c))

    def _open_frame(self) -> None:
        var = self.instance.order[len(self._stack)]
        self._stack.append(_Frame(var, deque(self.instance.domains[var])))

    def _eliminate(self, frame: _Frame, value: int, c: ConflictSet) -> None:
        if self.strategy is Strategy.ALG1:
            frame.elim_pairs.append((value, merge_explanation(EMPTY, c, frame.var, self._rank)))
        else:
            frame.explanation = merge_explanation(frame.explanation, c, frame.var, self._rank)

    def _exhausted_conflict(self, frame: _Frame) -> ConflictSet:
        if self.strategy is Strategy.ALG1:
            return conflict_union([e for _, e in frame.elim_pairs], self._rank)
        return frame.explanation

    def _retreat(self) -> bool:
        """Undo assignments back to the frame that should try its next value.

        The top frame's variable is assigned on entry. Returns False when no
        frame is left to resume.
        """
        if not self._backjumping:
            if not self._stack:
                return False
            self._p.pop()
            return True
        c = self.slot.get()
        target = culprit(self._p, c)
        while self._stack:
            frame = self._stack[-1]
            assigned = self._p.pop()
            if frame.var == target:
                self._eliminate(frame, assigned.value, c)
                return True
            self._stack.pop()
            self.stats.backjumps += 1
            self._emit(Backjump(frame.var))
        return False

    def _on_solution(self) -> bool:
        sol = tuple((a.var, a.value) for a in self._p)
        self.solutions.append(sol)
        self.stats.solutions += 1
        self._emit(SolutionFound(sol))
        if self.wanted is not None and len(self.solutions) >= self.wanted:
            raise _Stop
        if self._backjumping:
            self._save(solution_conflict(self._p, self._rank))
        return self._retreat()

    def _on_exhaust(self) -> bool:
        frame = self._stack.pop()
        self.stats.exhaustions += 1
        self._emit(Exhaust(frame.var))
        if self._backjumping:
            self._save(self._exhausted_conflict(frame))
        return self._retreat()

    def run(self) -> SearchOutcome:
        inst = self.instance
        n = inst.var_count
        stats = self.stats
        values = self._p.values
        try:
            alive = True
            if n == 0:
                alive = self._on_solution()
            else:
                self._open_frame()
            while alive:
                frame = self._stack[-1]
                if not frame.remaining:
                    alive = self._on_exhaust()
                    continue
                if self.max_trials is not None and stats.trials >= self.max_trials:
                    return self._finish(Termination.LIMIT_REACHED)
                value = frame.remaining.popleft()
                stats.trials += 1
                self._emit(Assign(frame.var, value))
                partner, run = first_violation(inst.plans[frame.var], values, frame.var, value)
                stats.consistency_checks += run
                if partner is None:
                    self._p.push(frame.var, value)
                    if len(self._stack) == n:
                        alive = self._on_solution()
                    else:
                        self._open_frame()
                    continue
                stats.local_conflicts += 1
                if self._backjumping:
                    c = ConflictSet((frame.var, partner))
                    self._save(c)
                    # The variable under trial is always the newest member,
                    # so it is its own culprit.
                    self._eliminate(frame, value, c)
        except _Stop:
            return self._finish(Termination.FIRST_FOUND)
        self._emit(Fail())
        if self.solutions:
            return self._finish(Termination.EXHAUSTED)
        return self._finish(Termination.UNSATISFIABLE)

    def _finish(self, termination: Termination) -> SearchOutcome:
        return SearchOutcome(list(self.solutions), self.stats, termination)


def solve(
    instance: CspInstance,
    strategy: Strategy | str = Strategy.CHRONO,
    mode: str = "first",
    max_trials: Optional[int] = None,
    trace: Optional[TraceSink] = None,
) -> SearchOutcome:
    return SearchEngine(instance, strategy, mode, max_trials, trace).run()


def _is_queens(values: Sequence[int]) -> bool:
    n = len(values)
    for a in range(n):
        for b in range(a + 1, n):
            if values[a] == values[b] or abs(values[a] - values[b]) == b - a:
                return False
    return True


def first_solution_contains_queens(solution: Mapping[int, int] | Iterable[tuple[int, int]]) -> bool:
    """Check the odd and even ids of a ``paper_problem(2n, n)`` solution.

    Both halves must be valid n-queens placements (queen k sits at id 2k-1,
    resp. 2k) and the two placements must differ.
    """
    values = dict(solution)
    if len(values) % 2 or sorted(values) != list(range(1, len(values) + 1)):
        return False
    n = len(values) // 2
    odd = [values[2 * k - 1] for k in range(1, n + 1)]
    even = [values[2 * k] for k in range(1, n + 1)]
    if any(not 1 <= v <= n for v in odd + even):
        return False
    return _is_queens(odd) and _is_queens(even) and odd != even
