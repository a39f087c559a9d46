"""CSP data model: binary constraints, per-variable check plans, partial solutions.

Variables and values are plain positive ints. An instance fixes a static
assignment order; each variable carries a check plan listing the earlier
variables it is tested against, in the exact order the checks run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .conflicts import ConflictSet


@dataclass(frozen=True)
class NotEqual:
    def holds(self, newer: int, newer_value: int, older: int, older_value: int) -> bool:
        return newer_value != older_value


@dataclass(frozen=True)
class DiagDiff:
    """|value(i) - value(j)| must differ from floor(|i - j| / divisor)."""

    divisor: int = 1

    def __post_init__(self):
        if self.divisor < 1:
            raise ValueError(f"divisor must be positive, got {self.divisor}")

    def holds(self, newer: int, newer_value: int, older: int, older_value: int) -> bool:
        return abs(newer_value - older_value) != abs(newer - older) // self.divisor


Constraint = Union[NotEqual, DiagDiff]


@dataclass(frozen=True)
class Check:
    partner: int
    constraint: Constraint


@dataclass(frozen=True)
class Assignment:
    var: int
    value: int


class _Satisfied:
    ok = True

    def __repr__(self):
        return "Satisfied"


Satisfied = _Satisfied()


@dataclass(frozen=True)
class Violated:
    conflict: ConflictSet
    ok = False


Verdict = Union[_Satisfied, Violated]


@dataclass(frozen=True)
class CspInstance:
    order: tuple[int, ...]
    domains: Mapping[int, tuple[int, ...]]
    plans: Mapping[int, tuple[Check, ...]]
    rank: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "domains", {v: tuple(d) for v, d in self.domains.items()})
        object.__setattr__(
            self, "plans", {v: tuple(self.plans.get(v, ())) for v in self.order}
        )
        object.__setattr__(self, "rank", {v: k for k, v in enumerate(self.order)})
        self.validate()

    def validate(self) -> None:
        n = len(self.order)
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError(f"order must be a permutation of 1..{n}: {self.order}")
        if set(self.domains) != set(self.order):
            missing = sorted(set(self.order) - set(self.domains))
            extra = sorted(set(self.domains) - set(self.order))
            raise ValueError(f"domain keys mismatch (missing {missing}, unknown {extra})")
        for var, dom in self.domains.items():
            if len(set(dom)) != len(dom):
                raise ValueError(f"duplicate values in domain of {var}")
            if any(v < 1 for v in dom):
                raise ValueError(f"domain of {var} contains a non-positive value")
        for var, plan in self.plans.items():
            for chk in plan:
                if chk.partner not in self.rank or self.rank[chk.partner] >= self.rank[var]:
                    raise ValueError(
                        f"check of {var} against {chk.partner}: partner must be assigned earlier"
                    )

    @property
    def var_count(self) -> int:
        return len(self.order)

    def tuple_space(self) -> int:
        size = 1
        for var in self.order:
            size *= len(self.domains[var])
        return size


class PartialSolution:
    """Assignments in the order they were made, oldest first."""

    __slots__ = ("_entries", "_values")

    def __init__(self, entries: Iterable[tuple[int, int] | Assignment] = ()):
        self._entries: list[Assignment] = []
        self._values: dict[int, int] = {}
        for e in entries:
            a = e if isinstance(e, Assignment) else Assignment(*e)
            self.push(a.var, a.value)

    def push(self, var: int, value: int) -> None:
        if var in self._values:
            raise ValueError(f"variable {var} already assigned")
        self._entries.append(Assignment(var, value))
        self._values[var] = value

    def pop(self) -> Assignment:
        a = self._entries.pop()
        del self._values[a.var]
        return a

    @property
    def entries(self) -> tuple[Assignment, ...]:
        return tuple(self._entries)

    @property
    def assigned_set(self) -> frozenset[int]:
        return frozenset(self._values)

    @property
    def values(self) -> Mapping[int, int]:
        return self._values

    def __contains__(self, var: int) -> bool:
        return var in self._values

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __reversed__(self):
        return reversed(self._entries)

    def __eq__(self, other):
        if isinstance(other, PartialSolution):
            return self._entries == other._entries
        return NotImplemented

    def __repr__(self):
        return f"PartialSolution({[(a.var, a.value) for a in self._entries]})"


def check(constraint: Constraint, newer: Assignment, older: Assignment) -> Verdict:
    if constraint.holds(newer.var, newer.value, older.var, older.value):
        return Satisfied
    return Violated(ConflictSet((newer.var, older.var)))


def first_violation(
    plan: Sequence[Check], values: Mapping[int, int], var: int, value: int
) -> tuple[int | None, int]:
    """Run ``plan`` for ``var=value`` and stop at the first failing check.

    Returns ``(partner, checks_run)``; partner is None when every check passed.
    Partners without a value in ``values`` are skipped and not counted.
    """
    run = 0
    for chk in plan:
        other = values.get(chk.partner)
        if other is None:
            continue
        run += 1
        if not chk.constraint.holds(var, value, chk.partner, other):
            return chk.partner, run
    return None, run


def consistent(instance: CspInstance, p: PartialSolution, i: int, v: int) -> Verdict:
    if i in p:
        raise ValueError(f"variable {i} is already assigned")
    partner, _ = first_violation(instance.plans[i], p.values, i, v)
    if partner is None:
        return Satisfied
    # The plan only references earlier variables, so i is the newest member.
    return Violated(ConflictSet((i, partner)))


def full_check(instance: CspInstance, values: Mapping[int, int]) -> bool:
    """Re-check every constraint of a complete assignment, ignoring plan order."""
    for var in instance.order:
        if values.get(var) not in instance.domains[var]:
            return False
        for chk in instance.plans[var]:
            if not chk.constraint.holds(var, values[var], chk.partner, values[chk.partner]):
                return False
    return True
