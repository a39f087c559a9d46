"""Command-line entry point: ``backjump solve`` and ``backjump compare``.

Exit codes: 0 solution found, 1 no solution, 2 usage error, 3 trial limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engines import STATS_KEYS, Strategy, Termination, format_trace, parse_mode, solve
from .problems import InstanceFormatError, parse_problem_spec

DEFAULT_MAX_TRIALS = 50_000_000


def _exit_code(outcome) -> int:
    if outcome.termination is Termination.LIMIT_REACHED:
        return 3
    return 0 if outcome.solutions else 1


def _mode(text):
    try:
        parse_mode(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", required=True, help="paper:V,K | queens:N | file:PATH")
    common.add_argument("--mode", type=_mode, default="first", help="first | all | limit:N")
    common.add_argument("--max-trials", type=int, default=DEFAULT_MAX_TRIALS)
    common.add_argument("--stats", choices=("text", "json"), default="text")
    common.add_argument("--trace", metavar="PATH", help="write the trace event stream here")
    common.add_argument("--quiet", action="store_true", help="do not print solutions")

    parser = argparse.ArgumentParser(prog="backjump", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p_solve = sub.add_parser("solve", parents=[common], help="run one strategy")
    p_solve.add_argument(
        "--strategy", choices=[s.value for s in Strategy], default=Strategy.CHRONO.value
    )
    sub.add_parser("compare", parents=[common], help="run chrono, alg1 and alg2 side by side")
    return parser


def _format_solution(solution) -> str:
    return " ".join(f"{var}={value}" for var, value in solution)


def _print_stats(record: dict, style: str, out) -> None:
    if style == "json":
        print(json.dumps(record), file=out)
    else:
        for key in STATS_KEYS:
            print(f"{key}={record[key]}", file=out)


def _run(instance, strategy, args):
    events = [] if args.trace else None
    outcome = solve(
        instance,
        strategy,
        mode=args.mode,
        max_trials=args.max_trials,
        trace=events.append if events is not None else None,
    )
    return outcome, events


def _write_trace(path, events) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_trace(events))


def cmd_solve(args, out=None) -> int:
    out = out or sys.stdout
    instance = parse_problem_spec(args.problem)
    outcome, events = _run(instance, args.strategy, args)
    if args.trace:
        _write_trace(args.trace, events)
    if not args.quiet:
        for sol in outcome.solutions:
            print(_format_solution(sol), file=out)
    _print_stats(outcome.record(), args.stats, out)
    return _exit_code(outcome)


def cmd_compare(args, out=None) -> int:
    out = out or sys.stdout
    instance = parse_problem_spec(args.problem)
    outcomes = {}
    for strategy in Strategy:
        outcome, events = _run(instance, strategy, args)
        if args.trace:
            _write_trace(f"{args.trace}.{strategy.value}", events)
        outcomes[strategy.value] = outcome

    if args.stats == "json":
        print(json.dumps({name: o.record() for name, o in outcomes.items()}), file=out)
    else:
        widths = [max(len(k), 13) for k in STATS_KEYS]
        print("strategy  " + "  ".join(k.rjust(w) for k, w in zip(STATS_KEYS, widths)), file=out)
        for name, o in outcomes.items():
            rec = o.record()
            cells = "  ".join(str(rec[k]).rjust(w) for k, w in zip(STATS_KEYS, widths))
            print(f"{name:<8}  {cells}", file=out)

    reference = outcomes[Strategy.CHRONO.value].solutions
    same = all(o.solutions == reference for o in outcomes.values())
    print(f"solutions: {'identical' if same else 'differ'}", file=out)
    if not args.quiet:
        for sol in reference:
            print(_format_solution(sol), file=out)
    return _exit_code(outcomes[Strategy.CHRONO.value])


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.max_trials is not None and args.max_trials < 0:
        parser.error("--max-trials must be non-negative")
    try:
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_compare(args)
    except (InstanceFormatError, ValueError, OSError) as exc:
        print(f"backjump: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
