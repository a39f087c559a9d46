"""Generate-and-test reference solver.

Walks the full Cartesian product of the domains and keeps every tuple that
satisfies all constraints. Constraint semantics are evaluated here from
scratch so the result does not depend on the engines' checking code.
"""

from __future__ import annotations

import itertools

from .model import CspInstance, DiagDiff, NotEqual

DEFAULT_CAP = 10**6


class OracleTooLarge(ValueError):
    pass


def _satisfied(constraint, i, vi, j, vj) -> bool:
    if type(constraint) is NotEqual:
        return vi != vj
    if type(constraint) is DiagDiff:
        return abs(vi - vj) != abs(i - j) // constraint.divisor
    raise TypeError(f"unknown constraint {constraint!r}")


def enumerate_all(instance: CspInstance, cap: int = DEFAULT_CAP):
    """All solutions, in the lexicographic order of (static order, trial order)."""
    order = instance.order
    space = 1
    for var in order:
        space *= len(instance.domains[var])
    if space > cap:
        raise OracleTooLarge(f"tuple space {space} exceeds cap {cap}")

    constraints = [
        (var, chk.partner, chk.constraint) for var in order for chk in instance.plans[var]
    ]
    out = []
    for combo in itertools.product(*(instance.domains[var] for var in order)):
        values = dict(zip(order, combo))
        if all(_satisfied(c, i, values[i], j, values[j]) for i, j, c in constraints):
            out.append(tuple(zip(order, combo)))
    return out
