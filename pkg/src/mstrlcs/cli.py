"""Command-line interface: solve, oracle, preprocess and bench subcommands.

Exit codes: 0 for success (feasible where that applies), 3 for a
well-formed but infeasible instance, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import benchmark
from .automaton import Removal, canonicalize, make_constraint_set
from .errors import (
    EmptyPatternError,
    InstanceTooLargeError,
    InvalidConstraintError,
    MemoryCapExceededError,
)
from .oracle import brute_force_solve
from .solver import DEFAULT_MEMORY_CAP_BYTES, solve
from .witness import backtrack

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _display(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.decode("latin-1")


def _status(feasible: bool) -> str:
    word = "yes" if feasible else "no"
    if sys.stdout.isatty() and not os.environ.get("NO_COLOR"):
        color = "32" if feasible else "31"
        return f"\x1b[{color}m{word}\x1b[0m"
    return word


def _read_input(inline: str | None, path: str | None) -> bytes:
    """Inline strings are UTF-8; files are raw bytes minus one trailing newline."""
    if path is not None:
        data = Path(path).read_bytes()
        if data.endswith(b"\n"):
            data = data[:-1]
        return data
    return (inline or "").encode("utf-8")


def _read_patterns(args: argparse.Namespace) -> list[bytes]:
    if args.patterns_file is not None:
        data = Path(args.patterns_file).read_bytes()
        if not data:
            return []
        if data.endswith(b"\n"):
            data = data[:-1]
        lines = data.split(b"\n")
        if any(line == b"" for line in lines):
            raise EmptyPatternError(f"pattern file {args.patterns_file} contains an empty line")
        return lines
    return [p.encode("utf-8") for p in (args.pattern or [])]


def _prepare_constraints(args: argparse.Namespace) -> tuple:
    patterns = _read_patterns(args)
    if getattr(args, "preprocess", True):
        canon = canonicalize(patterns, max_constraints=args.d_limit)
        return canon.constraints, list(canon.removed)
    return make_constraint_set(patterns, max_constraints=args.d_limit), []


def _memory_cap(args: argparse.Namespace) -> int | None:
    return args.memory_cap if args.memory_cap is not None else DEFAULT_MEMORY_CAP_BYTES


def _print_report_text(report: dict, removed: list[Removal]) -> None:
    print(f"feasible: {_status(report['feasible'])}")
    print(f"length: {report['length'] if report['length'] is not None else '-'}")
    if "lcs" in report:
        print(f"lcs: {report['lcs']}")
    for item in removed:
        print(f"removed: {_display(item.pattern)} ({item.reason} of {_display(item.kept)})")
    counters = " ".join(
        f"{key}={report[key]}"
        for key in ("d", "r", "t", "live_states", "cell_updates")
        if key in report
    )
    print(counters)
    print(f"elapsed: {report['elapsed_ms']} ms")


def _cmd_solve(args: argparse.Namespace) -> int:
    x = _read_input(args.x, args.x_file)
    y = _read_input(args.y, args.y_file)
    cs, removed = _prepare_constraints(args)
    result = solve(x, y, cs, keep_table=args.traceback, memory_cap_bytes=_memory_cap(args))
    report: dict = {
        "source": "dp",
        "feasible": result.feasible,
        "length": result.length,
    }
    if args.traceback and result.feasible:
        witness = backtrack(result.table, x, y, result.best_state)
        report["lcs"] = _display(witness.sequence)
    report.update({
        "d": cs.d,
        "r": cs.r,
        "t": result.stats.node_count,
        "live_states": result.stats.live_states,
        "cell_updates": result.stats.cell_updates,
        "elapsed_ms": round(result.stats.elapsed_s * 1000, 3),
        "removed_constraints": [_display(item.pattern) for item in removed],
    })
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        _print_report_text(report, removed)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _cmd_oracle(args: argparse.Namespace) -> int:
    x = _read_input(args.x, args.x_file)
    y = _read_input(args.y, args.y_file)
    cs, removed = _prepare_constraints(args)
    import time

    started = time.perf_counter()
    result = brute_force_solve(x, y, cs)
    elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    report: dict = {
        "source": "oracle",
        "feasible": result.feasible,
        "length": result.length,
    }
    if result.witness is not None:
        report["lcs"] = _display(result.witness)
    report.update({
        "d": cs.d,
        "r": cs.r,
        "optima_count": result.optima_count,
        "elapsed_ms": elapsed_ms,
        "removed_constraints": [_display(item.pattern) for item in removed],
    })
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        _print_report_text(report, removed)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _cmd_preprocess(args: argparse.Namespace) -> int:
    patterns = _read_patterns(args)
    canon = canonicalize(patterns, max_constraints=args.d_limit)
    if args.format == "json":
        report = {
            "patterns": [_display(p) for p in canon.constraints.patterns],
            "dropped": {_display(item.pattern): _display(item.kept) for item in canon.removed},
        }
        print(json.dumps(report, indent=2))
    else:
        for p in canon.constraints.patterns:
            print(_display(p))
        for item in canon.removed:
            print(
                f"dropped: {_display(item.pattern)} ({item.reason} of {_display(item.kept)})",
                file=sys.stderr,
            )
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(part) for part in args.sizes.split(",") if part.strip() != ""]
    report = benchmark.run_bench(
        sizes,
        repeats=args.repeats,
        seed=args.seed,
        alphabet_size=args.alphabet_size,
        num_patterns=args.num_patterns,
        pattern_len=args.pattern_len,
        memory_cap_bytes=_memory_cap(args),
    )
    if args.csv is not None:
        with open(args.csv, "w", newline="", encoding="utf-8") as stream:
            benchmark.write_csv(report.records, stream)
    if args.plot is not None:
        benchmark.render_figure(report, args.plot)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
        return EXIT_OK
    for r in report.records:
        if r.error is not None:
            print(f"n={r.n} m={r.m} d={r.d} r={r.r} repeat={r.repeat} error={r.error}")
            continue
        print(
            f"n={r.n} m={r.m} d={r.d} r={r.r} repeat={r.repeat} "
            f"elapsed={r.elapsed_s:.6f}s live_states={r.live_states} "
            f"cell_updates={r.cell_updates} length={r.length} "
            f"feasible={'yes' if r.feasible else 'no'}"
        )
    summary = report.summary
    for size, med in zip(summary.sizes, summary.median_elapsed_s):
        shown = f"{med:.6f}s" if med is not None else "n/a"
        print(f"size {size}: median {shown}")
    for (prev, cur), ratio in zip(zip(summary.sizes, summary.sizes[1:]), summary.step_ratios):
        shown = f"{ratio:.2f}x" if ratio is not None else "n/a"
        print(f"ratio {prev} -> {cur}: {shown}")
    if summary.growth_exponent is not None:
        print(f"growth exponent (time vs n*m): {summary.growth_exponent:.3f}")
    if args.csv is not None:
        print(f"csv written to {args.csv}", file=sys.stderr)
    if args.plot is not None:
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


def _add_xy_arguments(parser: argparse.ArgumentParser) -> None:
    gx = parser.add_mutually_exclusive_group(required=True)
    gx.add_argument("--x", help="first input string")
    gx.add_argument("--x-file", help="file holding the first input (raw bytes)")
    gy = parser.add_mutually_exclusive_group(required=True)
    gy.add_argument("--y", help="second input string")
    gy.add_argument("--y-file", help="file holding the second input (raw bytes)")


def _add_pattern_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "-p", "--pattern", action="append",
        help="constraint pattern, repeatable",
    )
    group.add_argument(
        "--patterns-file",
        help="newline-delimited pattern file; empty lines are rejected",
    )
    parser.add_argument(
        "--no-preprocess", dest="preprocess", action="store_false",
        help="skip duplicate/substring removal before solving",
    )
    parser.add_argument(
        "--d-limit", type=int, default=16,
        help="maximum number of constraints (default 16)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mstrlcs",
        description=(
            "Longest common subsequence of two strings that contains every "
            "given pattern as a contiguous substring."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve_p = sub.add_parser("solve", help="run the automaton + mask DP solver")
    _add_xy_arguments(solve_p)
    _add_pattern_arguments(solve_p)
    solve_p.add_argument("--traceback", action="store_true", help="also reconstruct one optimal sequence")
    solve_p.add_argument("--memory-cap", type=int, default=None, help="memory cap in bytes (default 2 GiB)")
    solve_p.add_argument("--format", choices=("text", "json"), default="text")
    solve_p.set_defaults(func=_cmd_solve)

    oracle_p = sub.add_parser("oracle", help="run the exhaustive reference solver")
    _add_xy_arguments(oracle_p)
    _add_pattern_arguments(oracle_p)
    oracle_p.add_argument("--format", choices=("text", "json"), default="text")
    oracle_p.set_defaults(func=_cmd_oracle)

    prep_p = sub.add_parser("preprocess", help="canonicalize a constraint set")
    _add_pattern_arguments(prep_p)
    prep_p.add_argument("--format", choices=("text", "json"), default="text")
    prep_p.set_defaults(func=_cmd_preprocess)

    bench_p = sub.add_parser("bench", help="timing harness over seeded instances")
    bench_p.add_argument("--sizes", default="64,128,256", help="comma-separated ascending sizes")
    bench_p.add_argument("--repeats", type=int, default=3)
    bench_p.add_argument("--seed", type=int, default=benchmark.DEFAULT_BENCH_SEED)
    bench_p.add_argument("--alphabet-size", type=int, default=4)
    bench_p.add_argument("--num-patterns", type=int, default=2)
    bench_p.add_argument("--pattern-len", type=int, default=3)
    bench_p.add_argument("--memory-cap", type=int, default=None, help="memory cap in bytes (default 2 GiB)")
    bench_p.add_argument("--csv", help="write per-record CSV to this path")
    bench_p.add_argument("--plot", help="write a log-log timing figure to this path")
    bench_p.add_argument("--format", choices=("text", "json"), default="text")
    bench_p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (InvalidConstraintError, InstanceTooLargeError, MemoryCapExceededError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
