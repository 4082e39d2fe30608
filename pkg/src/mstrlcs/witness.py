"""Reconstruct one optimal constrained subsequence from a retained table.

The walk runs backwards from (n, m) in the start state.  On a character
match it first tries the no-emit case (same state, same value in the
diagonal cell); otherwise it scans the diagonal cell in registry-id order
for the first predecessor state whose transition and value explain the
current entry, emits the character and follows it.  On a mismatch it steps
to the larger of the upper/left values, moving left on ties.  The walk is
iterative, so deep tables do not hit the recursion limit, and it must end
in the root state with value 0 or the table is declared inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import as_bytes
from .errors import InconsistentTableError
from .solver import DpTable
from .states import DpState


@dataclass(frozen=True)
class Witness:
    sequence: bytes

    @property
    def length(self) -> int:
        return len(self.sequence)


def backtrack(table: DpTable, x: str | bytes, y: str | bytes, start: DpState) -> Witness:
    """Walk the table back from ``start`` at (n, m) and emit the sequence."""
    xb = as_bytes(x)
    yb = as_bytes(y)
    if len(xb) != table.n or len(yb) != table.m:
        raise ValueError("input strings do not match the table dimensions")
    registry, tree = table.registry, table.tree
    rows = table.rows
    try:
        sid = registry.id_of(start)
    except KeyError:
        raise InconsistentTableError(f"start state {start} was never discovered") from None

    i, j = table.n, table.m
    emitted = bytearray()
    while i > 0 and j > 0:
        value = rows[i][j].get(sid)
        if value is None:
            raise InconsistentTableError(f"state {registry.state(sid)} not live at ({i}, {j})")
        if xb[i - 1] == yb[j - 1]:
            byte = xb[i - 1]
            diag = rows[i - 1][j - 1]
            if diag.get(sid) == value:
                i -= 1
                j -= 1
                continue
            state = registry.state(sid)
            found = None
            for psid in sorted(diag):
                if diag[psid] + 1 != value:
                    continue
                pred = registry.state(psid)
                node = tree.next_node(pred.node, byte)
                if node == state.node and (pred.mask | tree.output_mask[node]) == state.mask:
                    found = psid
                    break
            if found is None:
                raise InconsistentTableError(
                    f"no predecessor explains state {state} at ({i}, {j})"
                )
            emitted.append(byte)
            sid = found
            i -= 1
            j -= 1
        else:
            up = rows[i - 1][j].get(sid, -1)
            left = rows[i][j - 1].get(sid, -1)
            if up < 0 and left < 0:
                raise InconsistentTableError(
                    f"state {registry.state(sid)} has no source at ({i}, {j})"
                )
            if up > left:
                i -= 1
            else:
                j -= 1

    if registry.state(sid) != DpState(0, 0) or rows[i][j].get(sid) != 0:
        raise InconsistentTableError("walk did not terminate in the boundary state")
    emitted.reverse()
    return Witness(bytes(emitted))
