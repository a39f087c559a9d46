"""Look-back machinery: conflict sets, eliminating explanations, the conflict slot.

A ``ConflictSet`` is stored as a tuple ordered newest-assigned first, so the
culprit of a nonempty set is always its first element. Ordering uses a
``rank`` mapping (variable -> position in the static assignment order). When
no rank is given, variable ids are used directly, which matches the
descending-id order of the generated benchmark problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

if TYPE_CHECKING:
    from .model import PartialSolution


def _sorted(members: Iterable[int], rank: Optional[Mapping[int, int]]) -> tuple[int, ...]:
    uniq = set(members)
    if rank is None:
        return tuple(sorted(uniq, reverse=True))
    return tuple(sorted(uniq, key=rank.__getitem__, reverse=True))


@dataclass(frozen=True)
class ConflictSet:
    vars: tuple[int, ...] = ()

    @classmethod
    def of(cls, members: Iterable[int], rank: Optional[Mapping[int, int]] = None) -> ConflictSet:
        return cls(_sorted(members, rank))

    def __contains__(self, var: int) -> bool:
        return var in self.vars

    def __iter__(self):
        return iter(self.vars)

    def __len__(self) -> int:
        return len(self.vars)

    def __bool__(self) -> bool:
        return bool(self.vars)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.vars)

    def render(self) -> str:
        return ",".join(map(str, self.vars)) if self.vars else "-"


# Same representation; the name marks sets owned by a variable's choice frame.
Explanation = ConflictSet

EMPTY = ConflictSet()


class ConflictSlot:
    """Single mutable cell carrying the latest conflict across a failure path."""

    _UNSET = object()

    def __init__(self):
        self._current = self._UNSET

    def save(self, c: ConflictSet) -> None:
        self._current = c

    def get(self) -> ConflictSet:
        if self._current is self._UNSET:
            raise RuntimeError("conflict slot read before any conflict was saved")
        return self._current

    @property
    def is_set(self) -> bool:
        return self._current is not self._UNSET


def save_conflict(slot: ConflictSlot, c: ConflictSet) -> None:
    slot.save(c)


def get_conflict(slot: ConflictSlot) -> ConflictSet:
    return slot.get()


def culprit(p: PartialSolution, c: ConflictSet) -> Optional[int]:
    """Most recently assigned member of ``c`` in ``p``; None when ``c`` is empty."""
    if not c:
        return None
    stray = c.as_set() - p.assigned_set
    if stray:
        raise ValueError(f"conflict contains unassigned variables {sorted(stray)}")
    for a in reversed(p):
        if a.var in c:
            return a.var
    raise AssertionError("unreachable")


def merge_explanation(
    e: Explanation, c: ConflictSet, i: int, rank: Optional[Mapping[int, int]] = None
) -> Explanation:
    """Return ``e`` extended with ``c`` minus ``i``."""
    if i not in c:
        raise ValueError(f"variable {i} is not part of conflict {c.vars}")
    added = [v for v in c.vars if v != i and v not in e]
    if not added:
        return e
    return ConflictSet(_sorted((*e.vars, *added), rank))


def conflict_union(
    explanations: Sequence[Explanation], rank: Optional[Mapping[int, int]] = None
) -> ConflictSet:
    members: set[int] = set()
    for e in explanations:
        members.update(e.vars)
    return ConflictSet(_sorted(members, rank))


def solution_conflict(
    solution: PartialSolution, rank: Optional[Mapping[int, int]] = None
) -> ConflictSet:
    return ConflictSet(_sorted((a.var for a in solution), rank))
