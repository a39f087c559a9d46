"""Instance generators and the line-oriented instance file format.

File format (``#`` starts a comment)::

    csp <var_count>
    order <id> <id> ...
    domain <var> <value> <value> ...
    check <var> <partner> neq
    check <var> <partner> diag <divisor>

Checks for a variable run in the order their lines appear.
"""

from __future__ import annotations

from .model import Check, CspInstance, DiagDiff, NotEqual


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def paper_problem(var_card: int, value_card: int) -> CspInstance:
    """The coupled double n-queens benchmark.

    Variables are assigned ``var_card`` down to 1 and values tried
    ``value_card`` down to 1. Variable i is checked against every same-parity
    partner i+2, i+4, ... (oldest first: not-equal, then the halved diagonal
    rule), and finally against its neighbour i+1 for not-equal.
    """
    if var_card < 0 or value_card < 0:
        raise ValueError("cardinalities must be non-negative")
    order = tuple(range(var_card, 0, -1))
    domain = tuple(range(value_card, 0, -1))
    plans = {}
    for i in order:
        top = var_card if (var_card - i) % 2 == 0 else var_card - 1
        plan = []
        for j in range(top, i, -2):
            plan.append(Check(j, NotEqual()))
            plan.append(Check(j, DiagDiff(2)))
        if i + 1 <= var_card:
            plan.append(Check(i + 1, NotEqual()))
        plans[i] = tuple(plan)
    return CspInstance(order, {v: domain for v in order}, plans)


def queens(n: int) -> CspInstance:
    if n < 0:
        raise ValueError("n must be non-negative")
    order = tuple(range(n, 0, -1))
    domain = tuple(range(n, 0, -1))
    plans = {}
    for i in order:
        plan = []
        for j in range(n, i, -1):
            plan.append(Check(j, NotEqual()))
            plan.append(Check(j, DiagDiff(1)))
        plans[i] = tuple(plan)
    return CspInstance(order, {v: domain for v in order}, plans)


def serialize_instance(instance: CspInstance) -> str:
    lines = [f"csp {instance.var_count}"]
    lines.append(" ".join(["order", *map(str, instance.order)]))
    for var in instance.order:
        lines.append(" ".join(["domain", str(var), *map(str, instance.domains[var])]))
    for var in instance.order:
        for chk in instance.plans[var]:
            if isinstance(chk.constraint, NotEqual):
                lines.append(f"check {var} {chk.partner} neq")
            else:
                lines.append(f"check {var} {chk.partner} diag {chk.constraint.divisor}")
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno):
    try:
        out = [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno)
    if any(x < 1 for x in out):
        raise InstanceFormatError("ids and values must be positive", lineno)
    return out


def parse_instance(text: str) -> CspInstance:
    var_count = None
    order = None
    domains: dict[int, tuple[int, ...]] = {}
    plans: dict[int, list[Check]] = {}
    check_lines: list[tuple[int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if var_count is None and head != "csp":
            raise InstanceFormatError("file must start with a 'csp <var_count>' line", lineno)
        if head == "csp":
            if var_count is not None:
                raise InstanceFormatError("duplicate 'csp' line", lineno)
            if len(rest) != 1 or not rest[0].isdigit():
                raise InstanceFormatError("usage: csp <var_count>", lineno)
            var_count = int(rest[0])
        elif head == "order":
            if order is not None:
                raise InstanceFormatError("duplicate 'order' line", lineno)
            order = _ints(rest, lineno)
            if sorted(order) != list(range(1, var_count + 1)):
                raise InstanceFormatError(f"order must list each of 1..{var_count} once", lineno)
        elif head == "domain":
            if not rest:
                raise InstanceFormatError("usage: domain <var> <value> ...", lineno)
            var, *vals = _ints(rest, lineno)
            if not 1 <= var <= var_count:
                raise InstanceFormatError(f"unknown variable {var}", lineno)
            if var in domains:
                raise InstanceFormatError(f"duplicate domain for variable {var}", lineno)
            if len(set(vals)) != len(vals):
                raise InstanceFormatError(f"duplicate values in domain of {var}", lineno)
            domains[var] = tuple(vals)
        elif head == "check":
            if len(rest) < 3:
                raise InstanceFormatError("usage: check <var> <partner> neq|diag <d>", lineno)
            var, partner = _ints(rest[:2], lineno)
            kind, args = rest[2], rest[3:]
            if kind == "neq" and not args:
                constraint = NotEqual()
            elif kind == "diag" and len(args) == 1:
                constraint = DiagDiff(_ints(args, lineno)[0])
            else:
                raise InstanceFormatError(f"bad constraint {' '.join(rest[2:])!r}", lineno)
            for v in (var, partner):
                if not 1 <= v <= var_count:
                    raise InstanceFormatError(f"unknown variable {v}", lineno)
            plans.setdefault(var, []).append(Check(partner, constraint))
            check_lines.append((lineno, var, partner))
        else:
            raise InstanceFormatError(f"unknown directive {head!r}", lineno)

    if var_count is None:
        raise InstanceFormatError("empty instance file")
    if order is None:
        if var_count:
            raise InstanceFormatError("missing 'order' line")
        order = []
    missing = sorted(set(order) - set(domains))
    if missing:
        raise InstanceFormatError(f"no domain line for variables {missing}")
    rank = {v: k for k, v in enumerate(order)}
    for lineno, var, partner in check_lines:
        if rank[partner] >= rank[var]:
            raise InstanceFormatError(
                f"check of {var} references {partner}, which is not assigned earlier", lineno
            )
    return CspInstance(tuple(order), domains, plans)


def load_instance(path) -> CspInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def parse_problem_spec(spec: str) -> CspInstance:
    """Build an instance from ``paper:V,K``, ``queens:N`` or ``file:PATH``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "paper":
            v, k = arg.split(",")
            return paper_problem(int(v), int(k))
        if kind == "queens":
            return queens(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad problem {spec!r}: {exc}") from None
    if kind == "file" and arg:
        return load_instance(arg)
    raise ValueError(f"bad problem {spec!r}: expected paper:V,K, queens:N or file:PATH")
