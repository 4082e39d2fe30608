"""Dynamic program over (automaton node, constraint mask) states.

Each table cell (i, j) maps live states to the length of the best common
subsequence of x[:i] and y[:j] whose automaton walk ends in that state.
States absent from a cell are unreachable (conceptually minus infinity).
Cells are evaluated row-major; on a character match every state in the
diagonal cell carries its value over and additionally relaxes its successor
state with value + 1, accumulating by max so later relaxations never
overwrite a better one.  On a mismatch a cell is the pointwise max of the
cells above and to the left.  The answer is the best full-mask state in
cell (n, m); with no constraints the empty mask is already full and the
program degrades to the classic LCS recurrence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from .automaton import (
    ConstraintSet,
    KeywordTree,
    as_bytes,
    build_automaton,
    make_constraint_set,
)
from .errors import MemoryCapExceededError
from .states import DpState, StateRegistry, full_mask

DEFAULT_MEMORY_CAP_BYTES = 2 << 30
# Coarse cost of one state->length slot when estimating table footprint.
_BYTES_PER_ENTRY = 64


@dataclass
class SolveStats:
    node_count: int
    live_states: int
    cell_updates: int
    elapsed_s: float


@dataclass
class DpTable:
    """Fully retained DP table, needed for traceback."""

    tree: KeywordTree
    registry: StateRegistry
    n: int
    m: int
    rows: list[list[dict[int, int]]]

    def cell(self, i: int, j: int) -> dict[int, int]:
        return self.rows[i][j]

    def value(self, i: int, j: int, sid: int) -> int | None:
        """Stored length for a state id, None when unreachable."""
        return self.rows[i][j].get(sid)


@dataclass
class SolveResult:
    feasible: bool
    length: int | None
    best_state: DpState | None
    table: DpTable | None
    stats: SolveStats


def _check_memory_cap(n: int, m: int, node_count: int, d: int, keep_table: bool, cap: int | None) -> None:
    if cap is None:
        return
    state_bound = node_count << d
    cells = (n + 1) * (m + 1) if keep_table else 2 * (m + 1)
    estimate = cells * state_bound * _BYTES_PER_ENTRY
    if estimate > cap:
        raise MemoryCapExceededError(
            f"estimated footprint {estimate} bytes ({cells} cells x "
            f"{state_bound} states upper bound) exceeds the cap of {cap} bytes"
        )


def _best_full_state(cell: dict[int, int], registry: StateRegistry, full: int) -> tuple[int, int, int] | None:
    """Best (length, node, sid) with a full mask; ties prefer the smallest node."""
    best: tuple[int, int, int] | None = None
    for sid, value in cell.items():
        state = registry.state(sid)
        if state.mask != full:
            continue
        if best is None or value > best[0] or (value == best[0] and state.node < best[1]):
            best = (value, state.node, sid)
    return best


def solve(
    x: str | bytes,
    y: str | bytes,
    constraints: ConstraintSet | Iterable[str | bytes],
    *,
    keep_table: bool = False,
    memory_cap_bytes: int | None = DEFAULT_MEMORY_CAP_BYTES,
) -> SolveResult:
    """Length of the longest common subsequence containing every pattern.

    ``keep_table`` retains the full per-cell table for traceback; without
    it only two rows are alive at a time.  The pre-flight memory estimate
    (worst-case states per cell times cell count) is checked against
    ``memory_cap_bytes``; pass None to disable the check.
    """
    xb = as_bytes(x)
    yb = as_bytes(y)
    cs = constraints if isinstance(constraints, ConstraintSet) else make_constraint_set(constraints)
    started = time.perf_counter()
    tree = build_automaton(cs)
    n, m = len(xb), len(yb)
    _check_memory_cap(n, m, tree.node_count, cs.d, keep_table, memory_cap_bytes)

    registry = StateRegistry()
    root = registry.intern(DpState(0, 0))
    boundary = {root: 0}
    out_mask = tree.output_mask
    next_node = tree.next_node
    successor: dict[tuple[int, int], int] = {}
    updates = 0

    table_rows: list[list[dict[int, int]]] | None = None
    prev: list[dict[int, int]] = [boundary] * (m + 1)
    if keep_table:
        table_rows = [prev]
    for i in range(1, n + 1):
        xc = xb[i - 1]
        cur: list[dict[int, int]] = [boundary]
        for j in range(1, m + 1):
            if xc == yb[j - 1]:
                diag = prev[j - 1]
                cell = dict(diag)
                # Registry-id order keeps evaluation deterministic.
                for sid in sorted(diag):
                    tid = successor.get((sid, xc))
                    if tid is None:
                        state = registry.state(sid)
                        node = next_node(state.node, xc)
                        tid = registry.intern(DpState(node, state.mask | out_mask[node]))
                        successor[(sid, xc)] = tid
                    value = diag[sid] + 1
                    if cell.get(tid, -1) < value:
                        cell[tid] = value
            else:
                up = prev[j]
                left = cur[j - 1]
                if len(left) > len(up):
                    up, left = left, up
                cell = dict(up)
                for sid, value in left.items():
                    if cell.get(sid, -1) < value:
                        cell[sid] = value
            updates += len(cell)
            cur.append(cell)
        prev = cur
        if keep_table:
            table_rows.append(cur)

    best = _best_full_state(prev[m], registry, full_mask(cs.d))
    stats = SolveStats(
        node_count=tree.node_count,
        live_states=len(registry),
        cell_updates=updates,
        elapsed_s=time.perf_counter() - started,
    )
    table = DpTable(tree, registry, n, m, table_rows) if keep_table else None
    if best is None:
        return SolveResult(False, None, None, table, stats)
    length, _node, sid = best
    return SolveResult(True, length, registry.state(sid), table, stats)


def extract_answer(table: DpTable, pattern_count: int) -> tuple[bool, int | None, DpState | None]:
    """Read feasibility, length and the best state off a populated table."""
    best = _best_full_state(table.rows[table.n][table.m], table.registry, full_mask(pattern_count))
    if best is None:
        return (False, None, None)
    length, _node, sid = best
    return (True, length, table.registry.state(sid))


def predecessor_set(
    registry: StateRegistry,
    tree: KeywordTree,
    target: DpState,
    byte: int,
) -> list[DpState]:
    """All interned states that step into ``target`` on ``byte``.

    Scans the registry in id order, so callers taking the first match get
    a deterministic choice.
    """
    out_mask = tree.output_mask
    found: list[DpState] = []
    for sid in range(len(registry)):
        state = registry.state(sid)
        node = tree.next_node(state.node, byte)
        if node == target.node and (state.mask | out_mask[node]) == target.mask:
            found.append(state)
    return found
