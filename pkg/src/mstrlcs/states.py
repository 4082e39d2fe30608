"""Constraint masks and composite dynamic-programming states.

A mask is a plain int with bit j-1 meaning "pattern j is already contained
as a substring".  A DP state pairs an automaton node (match progress of the
sequence's tail) with such a mask (constraints satisfied so far).  States
are interned in a registry so cells can store dense int ids.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .automaton import KeywordTree


def full_mask(count: int) -> int:
    """Mask with every constraint bit set; 0 when there are no constraints."""
    return (1 << count) - 1


def mask_from_index(index: int, count: int) -> int:
    """The mask numbered ``index`` in the 0..2^count-1 enumeration."""
    if not 0 <= index < (1 << count):
        raise IndexError(f"mask index {index} out of range for {count} constraints")
    return index


def mask_members(mask: int) -> frozenset[int]:
    """1-based pattern indices recorded as contained in ``mask``."""
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def mask_union(mask: int, indices: Iterable[int]) -> int:
    """Fold 1-based pattern indices into ``mask``."""
    for index in indices:
        if index < 1:
            raise ValueError("pattern indices are 1-based")
        mask |= 1 << (index - 1)
    return mask


class DpState(NamedTuple):
    node: int
    mask: int


class StateRegistry:
    """Interns DP states as dense ids in first-discovery order."""

    def __init__(self) -> None:
        self._ids: dict[DpState, int] = {}
        self._states: list[DpState] = []

    def intern(self, state: DpState) -> int:
        sid = self._ids.get(state)
        if sid is None:
            sid = len(self._states)
            self._ids[state] = sid
            self._states.append(state)
        return sid

    def id_of(self, state: DpState) -> int:
        """Id of an already-interned state; KeyError if never seen."""
        return self._ids[state]

    def state(self, sid: int) -> DpState:
        return self._states[sid]

    def __len__(self) -> int:
        return len(self._states)

    def __iter__(self) -> Iterator[DpState]:
        return iter(self._states)


def advance_state(tree: KeywordTree, state: DpState, byte: int) -> DpState:
    """Append one byte to the tracked sequence.

    The node component steps through the automaton independently of the
    mask; the mask gains the output set of the node stepped onto and never
    loses bits.
    """
    node = tree.next_node(state.node, byte)
    return DpState(node, state.mask | tree.output_mask[node])
