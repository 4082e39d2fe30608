"""Timing harness: seeded instances, per-size records, growth-exponent fit.

Instances are generated deterministically from (seed, size, repeat), with
constraint patterns drawn as substrings of x so most instances stay
feasible.  The report carries one record per (size, repeat) pair plus a
summary with per-size medians, step ratios between consecutive sizes and
the least-squares growth exponent of time versus n*m.  ``render_figure``
writes that summary as a log-log matplotlib plot.
"""

from __future__ import annotations

import csv
import math
import random
import statistics
from dataclasses import dataclass
from typing import IO, Sequence

from .automaton import canonicalize
from .errors import MemoryCapExceededError
from .solver import DEFAULT_MEMORY_CAP_BYTES, solve

DEFAULT_BENCH_SEED = 1
_ALPHABET = bytes(range(97, 123))  # 'a'..'z'

CSV_COLUMNS = (
    "n", "m", "d", "r", "repeat",
    "elapsed_s", "live_states", "cell_updates", "length", "feasible", "error",
)


@dataclass(frozen=True)
class BenchRecord:
    n: int
    m: int
    d: int
    r: int
    repeat: int
    elapsed_s: float | None
    live_states: int | None
    cell_updates: int | None
    length: int | None
    feasible: bool
    error: str | None


@dataclass(frozen=True)
class BenchSummary:
    sizes: tuple[int, ...]
    median_elapsed_s: tuple[float | None, ...]
    step_ratios: tuple[float | None, ...]
    growth_exponent: float | None


@dataclass(frozen=True)
class BenchReport:
    records: tuple[BenchRecord, ...]
    summary: BenchSummary

    def to_json_dict(self) -> dict:
        return {
            "records": [vars(r) | {} for r in self.records],
            "summary": {
                "sizes": list(self.summary.sizes),
                "median_elapsed_s": list(self.summary.median_elapsed_s),
                "step_ratios": list(self.summary.step_ratios),
                "growth_exponent": self.summary.growth_exponent,
            },
        }


def make_instance(
    seed: int,
    size: int,
    repeat: int,
    *,
    alphabet_size: int = 4,
    num_patterns: int = 2,
    pattern_len: int = 3,
) -> tuple[bytes, bytes, list[bytes]]:
    """Deterministic instance for one (seed, size, repeat) triple."""
    rng = random.Random(f"{seed}:{size}:{repeat}")
    letters = _ALPHABET[:alphabet_size]
    x = bytes(rng.choice(letters) for _ in range(size))
    y = bytes(rng.choice(letters) for _ in range(size))
    patterns: list[bytes] = []
    for _ in range(num_patterns):
        cand = b""
        for _attempt in range(100):
            if size >= pattern_len:
                at = rng.randrange(size - pattern_len + 1)
                cand = x[at:at + pattern_len]
            else:
                cand = bytes(rng.choice(letters) for _ in range(pattern_len))
            if cand not in patterns:
                break
        patterns.append(cand)
    return x, y, patterns


def _validate(sizes: Sequence[int], repeats: int, alphabet_size: int, num_patterns: int, pattern_len: int) -> None:
    if not sizes:
        raise ValueError("bench needs at least one size")
    if any(s <= 0 for s in sizes):
        raise ValueError("bench sizes must be positive")
    if list(sizes) != sorted(set(sizes)):
        raise ValueError("bench sizes must be strictly ascending")
    if repeats < 1:
        raise ValueError("bench repeats must be at least 1")
    if not 1 <= alphabet_size <= len(_ALPHABET):
        raise ValueError(f"alphabet size must be in 1..{len(_ALPHABET)}")
    if num_patterns < 0:
        raise ValueError("number of patterns cannot be negative")
    if pattern_len < 1:
        raise ValueError("pattern length must be at least 1")


def run_bench(
    sizes: Sequence[int],
    *,
    repeats: int = 3,
    seed: int = DEFAULT_BENCH_SEED,
    alphabet_size: int = 4,
    num_patterns: int = 2,
    pattern_len: int = 3,
    memory_cap_bytes: int | None = DEFAULT_MEMORY_CAP_BYTES,
    warmup: bool = True,
) -> BenchReport:
    """Solve every (size, repeat) instance and collect timing records.

    A memory-cap rejection becomes a per-record error instead of aborting
    the run.  One untimed warmup solve smooths allocator and import noise
    out of the first measurement.
    """
    _validate(sizes, repeats, alphabet_size, num_patterns, pattern_len)
    gen_opts = dict(
        alphabet_size=alphabet_size,
        num_patterns=num_patterns,
        pattern_len=pattern_len,
    )
    if warmup:
        x, y, pats = make_instance(seed, sizes[0], 0, **gen_opts)
        cs = canonicalize(pats).constraints
        try:
            solve(x, y, cs, memory_cap_bytes=memory_cap_bytes)
        except MemoryCapExceededError:
            pass

    records: list[BenchRecord] = []
    for size in sizes:
        for repeat in range(repeats):
            x, y, pats = make_instance(seed, size, repeat, **gen_opts)
            cs = canonicalize(pats).constraints
            try:
                result = solve(x, y, cs, memory_cap_bytes=memory_cap_bytes)
            except MemoryCapExceededError as exc:
                records.append(BenchRecord(size, size, cs.d, cs.r, repeat,
                                           None, None, None, None, False, str(exc)))
                continue
            records.append(BenchRecord(
                n=size,
                m=size,
                d=cs.d,
                r=cs.r,
                repeat=repeat,
                elapsed_s=result.stats.elapsed_s,
                live_states=result.stats.live_states,
                cell_updates=result.stats.cell_updates,
                length=result.length,
                feasible=result.feasible,
                error=None,
            ))
    return BenchReport(tuple(records), _summarize(tuple(sizes), records))


def _summarize(sizes: tuple[int, ...], records: list[BenchRecord]) -> BenchSummary:
    medians: list[float | None] = []
    for size in sizes:
        elapsed = [r.elapsed_s for r in records if r.n == size and r.error is None]
        medians.append(statistics.median(elapsed) if elapsed else None)
    ratios: list[float | None] = []
    for prev, cur in zip(medians, medians[1:]):
        ratios.append(cur / prev if prev and cur and prev > 0 else None)
    points = [
        (size * size, med)
        for size, med in zip(sizes, medians)
        if med is not None and med > 0
    ]
    return BenchSummary(sizes, tuple(medians), tuple(ratios), fit_growth_exponent(points))


def fit_growth_exponent(points: Sequence[tuple[float, float]]) -> float | None:
    """Least-squares slope of log(time) against log(work); None if underdetermined."""
    if len(points) < 2:
        return None
    logs = [(math.log(wx), math.log(wy)) for wx, wy in points]
    mean_x = sum(p[0] for p in logs) / len(logs)
    mean_y = sum(p[1] for p in logs) / len(logs)
    var = sum((px - mean_x) ** 2 for px, _ in logs)
    if var == 0:
        return None
    cov = sum((px - mean_x) * (py - mean_y) for px, py in logs)
    return cov / var


def write_csv(records: Sequence[BenchRecord], stream: IO[str]) -> None:
    """One CSV row per record, empty fields for errored runs."""
    writer = csv.writer(stream)
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.n, r.m, r.d, r.r, r.repeat,
            "" if r.elapsed_s is None else f"{r.elapsed_s:.6f}",
            "" if r.live_states is None else r.live_states,
            "" if r.cell_updates is None else r.cell_updates,
            "" if r.length is None else r.length,
            int(r.feasible),
            r.error or "",
        ])


def render_figure(report: BenchReport, path: str) -> None:
    """Log-log wall time versus n*m with the fitted exponent annotated."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = report.summary
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    scatter_x = [r.n * r.m for r in report.records if r.elapsed_s is not None]
    scatter_y = [r.elapsed_s for r in report.records if r.elapsed_s is not None]
    if scatter_x:
        ax.loglog(scatter_x, scatter_y, "x", color="0.6", label="repeats")
    line = [
        (size * size, med)
        for size, med in zip(summary.sizes, summary.median_elapsed_s)
        if med is not None
    ]
    if line:
        xs, ys = zip(*line)
        ax.loglog(xs, ys, "o-", color="C0", label="median")
        ref = [ys[0] * (wx / xs[0]) for wx in xs]
        ax.loglog(xs, ref, "--", color="C1", label="linear in n*m")
    exponent = summary.growth_exponent
    title = "constrained LCS solve time"
    if exponent is not None:
        title += f" (fitted exponent {exponent:.2f})"
    ax.set_title(title)
    ax.set_xlabel("n * m")
    ax.set_ylabel("wall time (s)")
    ax.grid(True, which="both", linewidth=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
