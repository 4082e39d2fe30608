"""Exhaustive reference solver, deliberately independent of the automaton.

Enumerates every distinct subsequence of the shorter input, keeps the ones
that are also subsequences of the longer input and contain every pattern by
a naive substring scan, and reports the best.  Guards refuse instances
where the enumeration would blow up; this module exists to check the real
solver, not to be fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automaton import ConstraintSet, as_bytes, make_constraint_set
from .errors import InstanceTooLargeError

ORACLE_MAX_INPUT_LEN = 20
ORACLE_MAX_TOTAL_PATTERN_LEN = 12


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    length: int | None
    witness: bytes | None
    optima_count: int


def is_subsequence(z: str | bytes, s: str | bytes) -> bool:
    """True when ``z`` can be read off ``s`` left to right."""
    zb = as_bytes(z)
    sb = as_bytes(s)
    if not zb:
        return True
    pos = 0
    for byte in sb:
        if byte == zb[pos]:
            pos += 1
            if pos == len(zb):
                return True
    return False


def contains_all_substrings(z: str | bytes, patterns: ConstraintSet | Iterable[str | bytes]) -> bool:
    """Naive scan: every pattern occurs contiguously in ``z``."""
    zb = as_bytes(z)
    pats = patterns.patterns if isinstance(patterns, ConstraintSet) else [as_bytes(p) for p in patterns]
    return all(p in zb for p in pats)


def brute_force_solve(
    x: str | bytes,
    y: str | bytes,
    constraints: ConstraintSet | Iterable[str | bytes],
) -> OracleResult:
    """Exhaustive answer with the lexicographically smallest optimal witness."""
    xb = as_bytes(x)
    yb = as_bytes(y)
    cs = constraints if isinstance(constraints, ConstraintSet) else make_constraint_set(constraints)
    if len(xb) > ORACLE_MAX_INPUT_LEN or len(yb) > ORACLE_MAX_INPUT_LEN:
        raise InstanceTooLargeError(
            f"oracle inputs are capped at {ORACLE_MAX_INPUT_LEN} bytes "
            f"(got {len(xb)} and {len(yb)})"
        )
    if cs.r > ORACLE_MAX_TOTAL_PATTERN_LEN:
        raise InstanceTooLargeError(
            f"oracle caps total pattern length at {ORACLE_MAX_TOTAL_PATTERN_LEN} (got {cs.r})"
        )

    short, other = (xb, yb) if len(xb) <= len(yb) else (yb, xb)
    k = len(short)
    seen: set[bytes] = set()
    best: bytes | None = None
    best_len = -1
    count = 0
    for mask in range(1 << k):
        cand = bytes(short[p] for p in range(k) if (mask >> p) & 1)
        if cand in seen:
            continue
        if not is_subsequence(cand, other):
            continue
        seen.add(cand)
        if not contains_all_substrings(cand, cs):
            continue
        if len(cand) > best_len:
            best_len = len(cand)
            best = cand
            count = 1
        elif len(cand) == best_len:
            count += 1
            if cand < best:
                best = cand
    if best is None:
        return OracleResult(False, None, None, 0)
    return OracleResult(True, best_len, best, count)
