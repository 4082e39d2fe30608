"""Keyword-tree automaton over a set of substring constraints.

The tree is a trie over every prefix of every pattern, numbered in preorder
with children visited in ascending byte order (root = 0), so node ids are
deterministic for a given pattern list.  Failure links, completed output
sets and a dense transition table turn the trie into a multi-pattern
matching automaton in the Aho-Corasick style: ``next_node(i, c)`` is the
node whose label is the longest suffix of ``label(i) + c`` that is still a
prefix of some pattern, and ``outputs[i]`` lists every pattern that ends
exactly at node ``i``'s label.  Walking a string through ``next_node`` and
folding the outputs it passes therefore reports precisely the patterns
contained in that string as substrings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyPatternError, TooManyConstraintsError

DEFAULT_MAX_CONSTRAINTS = 16
# Constraint masks are plain ints; one bit per pattern has to fit a word.
MAX_SUPPORTED_CONSTRAINTS = 63


def as_bytes(value: str | bytes | bytearray) -> bytes:
    """UTF-8 encode str inputs; pass bytes-like data through unchanged."""
    if isinstance(value, str):
        return value.encode("utf-8")
    return bytes(value)


@dataclass(frozen=True)
class ConstraintSet:
    """Ordered tuple of non-empty byte patterns, indexed 1..d."""

    patterns: tuple[bytes, ...]

    def __post_init__(self) -> None:
        for p in self.patterns:
            if not p:
                raise EmptyPatternError("constraint patterns must be non-empty")

    @property
    def d(self) -> int:
        return len(self.patterns)

    @property
    def r(self) -> int:
        return sum(len(p) for p in self.patterns)


def make_constraint_set(
    patterns: Iterable[str | bytes],
    *,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> ConstraintSet:
    """Validate and freeze a pattern list without canonicalizing it."""
    if max_constraints > MAX_SUPPORTED_CONSTRAINTS:
        raise ValueError(
            f"constraint limit {max_constraints} exceeds the supported "
            f"word width of {MAX_SUPPORTED_CONSTRAINTS}"
        )
    pats = tuple(as_bytes(p) for p in patterns)
    if len(pats) > max_constraints:
        raise TooManyConstraintsError(
            f"{len(pats)} constraints exceed the limit of {max_constraints}"
        )
    return ConstraintSet(pats)


class KeywordTree:
    """Preorder-numbered trie over a constraint set plus match machinery.

    Construction is staged: ``build_keyword_tree`` creates the trie,
    ``compute_failure_links`` adds failure links and the dense transition
    table, ``complete_output_sets`` folds suffix matches into per-node
    output sets.  ``build_automaton`` runs all three.  A completed tree is
    treated as immutable and may be shared freely across threads.
    """

    def __init__(self, constraints: ConstraintSet):
        self.constraints = constraints
        # Provisional trie in insertion order; renumbered below.
        proto_children: list[dict[int, int]] = [{}]
        proto_own: list[set[int]] = [set()]
        for index, pattern in enumerate(constraints.patterns, start=1):
            node = 0
            for byte in pattern:
                child = proto_children[node].get(byte)
                if child is None:
                    child = len(proto_children)
                    proto_children.append({})
                    proto_own.append(set())
                    proto_children[node][byte] = child
                node = child
            proto_own[node].add(index)

        # Preorder with children in ascending byte order fixes the ids.
        order: list[int] = []
        stack = [0]
        while stack:
            node = stack.pop()
            order.append(node)
            for byte in sorted(proto_children[node], reverse=True):
                stack.append(proto_children[node][byte])
        new_id = {old: i for i, old in enumerate(order)}

        t = len(order)
        self.parent: list[int] = [-1] * t
        self.edge_byte: list[int] = [-1] * t
        self.depth: list[int] = [0] * t
        self.children: list[dict[int, int]] = [{} for _ in range(t)]
        self.own: list[frozenset[int]] = [frozenset()] * t
        for old in order:
            nid = new_id[old]
            self.own[nid] = frozenset(proto_own[old])
            for byte in sorted(proto_children[old]):
                cid = new_id[proto_children[old][byte]]
                self.children[nid][byte] = cid
                self.parent[cid] = nid
                self.edge_byte[cid] = byte
                self.depth[cid] = self.depth[nid] + 1

        self.terminals: list[int] = [0] * constraints.d
        for nid, indices in enumerate(self.own):
            for index in indices:
                self.terminals[index - 1] = nid

        self.alphabet: bytes = bytes(sorted({b for p in constraints.patterns for b in p}))
        self._alpha_index: dict[int, int] = {b: k for k, b in enumerate(self.alphabet)}

        # Filled by the later construction stages.
        self.fail: list[int] | None = None
        self.fail_depth: list[int] | None = None
        self.outputs: list[frozenset[int]] | None = None
        self.output_mask: list[int] | None = None
        self._next_table: list[list[int]] | None = None

    @property
    def node_count(self) -> int:
        return len(self.children)

    def label(self, node: int) -> bytes:
        """Spelled string on the path from the root to ``node``."""
        out = bytearray()
        while node > 0:
            out.append(self.edge_byte[node])
            node = self.parent[node]
        out.reverse()
        return bytes(out)

    def is_leaf(self, node: int) -> bool:
        return not self.children[node]

    def next_node(self, node: int, byte: int) -> int:
        """Transition: longest suffix of label(node)+byte that is a prefix.

        Bytes outside the pattern alphabet always lead back to the root.
        """
        if self._next_table is None:
            raise RuntimeError("failure links have not been computed yet")
        k = self._alpha_index.get(byte)
        if k is None:
            return 0
        return self._next_table[node][k]


def build_keyword_tree(constraints: ConstraintSet) -> KeywordTree:
    """Build the bare trie stage (no failure links or outputs yet)."""
    return KeywordTree(constraints)


def compute_failure_links(tree: KeywordTree) -> KeywordTree:
    """Fill failure links and the dense transition table via BFS.

    A node's failure link points at the node spelling the longest proper
    suffix of its label that is still a pattern prefix; ``fail_depth`` is
    that suffix's length.  The transition table resolves the whole failure
    chain once so lookups are O(1) afterwards.
    """
    t = tree.node_count
    alphabet = tree.alphabet
    fail = [0] * t
    table = [[0] * len(alphabet) for _ in range(t)]
    for k, byte in enumerate(alphabet):
        table[0][k] = tree.children[0].get(byte, 0)
    queue = deque(tree.children[0].values())
    while queue:
        node = queue.popleft()
        fallback = table[fail[node]]
        row = table[node]
        for k, byte in enumerate(alphabet):
            child = tree.children[node].get(byte)
            row[k] = child if child is not None else fallback[k]
        for byte, child in tree.children[node].items():
            fail[child] = fallback[tree._alpha_index[byte]]
            queue.append(child)
    tree.fail = fail
    tree.fail_depth = [tree.depth[f] for f in fail]
    tree._next_table = table
    return tree


def complete_output_sets(tree: KeywordTree) -> KeywordTree:
    """Fold each node's failure chain into its output set.

    After this stage ``j in outputs[i]`` holds exactly when pattern j is a
    suffix of label(i); ``output_mask[i]`` is the same set as a bit mask
    with bit j-1 standing for pattern j.
    """
    if tree.fail is None:
        raise RuntimeError("failure links must be computed first")
    t = tree.node_count
    outputs: list[frozenset[int]] = [frozenset()] * t
    masks = [0] * t
    # Breadth-first order guarantees the (shallower) failure target is done.
    queue = deque([0])
    while queue:
        node = queue.popleft()
        if node:
            outputs[node] = tree.own[node] | outputs[tree.fail[node]]
            mask = masks[tree.fail[node]]
            for index in tree.own[node]:
                mask |= 1 << (index - 1)
            masks[node] = mask
        queue.extend(tree.children[node].values())
    tree.outputs = outputs
    tree.output_mask = masks
    return tree


def build_automaton(constraints: ConstraintSet) -> KeywordTree:
    """Run every construction stage and return the completed tree."""
    return complete_output_sets(compute_failure_links(build_keyword_tree(constraints)))


@dataclass(frozen=True)
class Removal:
    """One pattern dropped by canonicalization and why it was safe."""

    pattern: bytes
    kept: bytes
    reason: str  # "duplicate" or "substring"


@dataclass(frozen=True)
class Canonicalization:
    constraints: ConstraintSet
    removed: tuple[Removal, ...]


def canonicalize(
    patterns: Iterable[str | bytes],
    *,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
) -> Canonicalization:
    """Drop duplicates, then patterns contained in another pattern.

    A pattern inside another is redundant: any sequence containing the
    longer one contains it too.  Containment is detected on the keyword
    tree of the deduplicated set: pattern j is contained in another
    pattern when its terminal node appears in some other node's completed
    output set (suffix occurrence) or still has children (proper prefix).
    Survivors keep their input order; the constraint limit applies to the
    survivor count.
    """
    if max_constraints > MAX_SUPPORTED_CONSTRAINTS:
        raise ValueError(
            f"constraint limit {max_constraints} exceeds the supported "
            f"word width of {MAX_SUPPORTED_CONSTRAINTS}"
        )
    pats = [as_bytes(p) for p in patterns]
    removed: list[Removal] = []
    deduped: list[bytes] = []
    seen: set[bytes] = set()
    for p in pats:
        if p in seen:
            removed.append(Removal(p, p, "duplicate"))
        else:
            seen.add(p)
            deduped.append(p)

    survivors: list[bytes] = []
    if deduped:
        tree = build_automaton(ConstraintSet(tuple(deduped)))
        dropped: set[int] = set()
        for node in range(tree.node_count):
            for index in tree.outputs[node]:
                if tree.terminals[index - 1] != node:
                    dropped.add(index)
        for index, node in enumerate(tree.terminals, start=1):
            if not tree.is_leaf(node):
                dropped.add(index)
        survivors = [p for k, p in enumerate(deduped, start=1) if k not in dropped]
        for k in sorted(dropped):
            p = deduped[k - 1]
            kept = next(s for s in survivors if p in s)
            removed.append(Removal(p, kept, "substring"))

    if len(survivors) > max_constraints:
        raise TooManyConstraintsError(
            f"{len(survivors)} constraints survive canonicalization, "
            f"exceeding the limit of {max_constraints}"
        )
    return Canonicalization(ConstraintSet(tuple(survivors)), tuple(removed))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(tree: KeywordTree) -> str:
    """Render the tree as a dot graph: solid trie edges, dashed failure links."""
    lines = ["digraph keyword_tree {", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    for node in range(tree.node_count):
        label = _dot_escape(f"{node}:{tree.label(node).decode('latin-1')}")
        lines.append(f'  n{node} [label="{label}"];')
    for node in range(tree.node_count):
        for byte, child in tree.children[node].items():
            edge = _dot_escape(chr(byte))
            lines.append(f'  n{node} -> n{child} [label="{edge}"];')
    if tree.fail is not None:
        for node in range(1, tree.node_count):
            lines.append(f"  n{node} -> n{tree.fail[node]} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
