from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mstrlcs import (
    ConstraintSet,
    EmptyPatternError,
    TooManyConstraintsError,
    build_automaton,
    build_keyword_tree,
    canonicalize,
    complete_output_sets,
    compute_failure_links,
    make_constraint_set,
    to_dot,
)
from conftest import FIXTURE_PATTERNS
from naive import naive_fail, naive_outputs, naive_transition, prefix_set


def _patterns_of(tree):
    return list(tree.constraints.patterns)


# ---------------------------------------------------------------------------
# constraint set construction
# ---------------------------------------------------------------------------

def test_constraint_set_counts():
    cs = make_constraint_set(FIXTURE_PATTERNS)
    assert cs.d == 3
    assert cs.r == 8


def test_constraint_set_accepts_str_and_bytes():
    cs = make_constraint_set(["ab", b"ba"])
    assert cs.patterns == (b"ab", b"ba")


def test_empty_pattern_rejected():
    with pytest.raises(EmptyPatternError):
        make_constraint_set([b"ab", b""])


def test_too_many_constraints_rejected():
    pats = [bytes([97 + i, 97 + i]) for i in range(17)]
    with pytest.raises(TooManyConstraintsError):
        make_constraint_set(pats)
    assert make_constraint_set(pats, max_constraints=17).d == 17


# ---------------------------------------------------------------------------
# trie construction
# ---------------------------------------------------------------------------

def test_fixture_labels_in_preorder(fixture_tree):
    labels = [fixture_tree.label(i) for i in range(fixture_tree.node_count)]
    assert labels == [b"", b"a", b"aa", b"aab", b"ab", b"aba", b"b", b"ba"]


def test_fixture_terminals(fixture_tree):
    assert fixture_tree.terminals == [3, 5, 7]
    assert fixture_tree.own[3] == {1}
    assert fixture_tree.own[5] == {2}
    assert fixture_tree.own[7] == {3}


def test_trivial_trees():
    assert build_keyword_tree(make_constraint_set([])).node_count == 1
    assert build_keyword_tree(make_constraint_set([b"a"])).node_count == 2


def test_node_count_bounded_by_total_length():
    for pats in ([b"ab", b"abab"], [b"aaa"], [b"ab", b"ba", b"aa"]):
        tree = build_keyword_tree(make_constraint_set(pats))
        assert tree.node_count <= sum(len(p) for p in pats) + 1


def test_duplicate_patterns_share_a_terminal():
    tree = build_automaton(ConstraintSet((b"ab", b"ab")))
    assert tree.terminals[0] == tree.terminals[1]
    node = tree.terminals[0]
    assert tree.own[node] == {1, 2}
    assert tree.outputs[node] == {1, 2}
    assert tree.output_mask[node] == 0b11


# ---------------------------------------------------------------------------
# failure links
# ---------------------------------------------------------------------------

def test_fixture_failure_links(fixture_tree):
    assert fixture_tree.fail[1:] == [0, 1, 4, 6, 7, 0, 1]
    assert fixture_tree.fail_depth[1] == 0
    assert fixture_tree.fail_depth[5] == 2


def test_single_char_pattern_fail_depth():
    tree = build_automaton(make_constraint_set([b"a"]))
    assert tree.fail == [0, 0]
    assert tree.fail_depth == [0, 0]


# ---------------------------------------------------------------------------
# output sets
# ---------------------------------------------------------------------------

def test_fixture_output_sets(fixture_tree):
    assert fixture_tree.outputs[3] == {1}
    assert fixture_tree.outputs[5] == {2, 3}
    assert fixture_tree.outputs[7] == {3}
    assert fixture_tree.outputs[0] == frozenset()
    assert fixture_tree.outputs[4] == frozenset()


def test_fixture_output_masks(fixture_tree):
    assert fixture_tree.output_mask[5] == 0b110
    assert fixture_tree.output_mask[3] == 0b001
    assert fixture_tree.output_mask[0] == 0


# ---------------------------------------------------------------------------
# transitions
# ---------------------------------------------------------------------------

def test_fixture_transition_rows(fixture_tree):
    # Derived from the longest-suffix law; checked against naive_transition
    # below so these frozen rows cannot drift.
    assert [fixture_tree.next_node(i, ord("a")) for i in range(8)] == [1, 2, 2, 5, 5, 2, 7, 2]
    assert [fixture_tree.next_node(i, ord("b")) for i in range(8)] == [6, 4, 3, 6, 6, 4, 6, 4]


def test_transition_on_own_edge(fixture_tree):
    assert fixture_tree.next_node(4, ord("a")) == 5


def test_byte_outside_alphabet_goes_to_root(fixture_tree):
    assert fixture_tree.next_node(0, ord("z")) == 0
    assert fixture_tree.next_node(5, ord("z")) == 0


def test_next_requires_failure_stage():
    tree = build_keyword_tree(make_constraint_set([b"ab"]))
    with pytest.raises(RuntimeError):
        tree.next_node(0, ord("a"))


def _check_tree_laws(patterns: list[bytes]) -> None:
    """Transition, failure and output laws against first-principles scans."""
    tree = build_automaton(ConstraintSet(tuple(patterns)))
    labels = [tree.label(i) for i in range(tree.node_count)]
    assert set(labels) == prefix_set(patterns)
    assert labels == sorted(labels)  # preorder == lexicographic label order
    by_label = {label: i for i, label in enumerate(labels)}
    for i, label in enumerate(labels):
        if i:
            assert labels[tree.fail[i]] == naive_fail(patterns, label)
            assert tree.fail_depth[i] == len(naive_fail(patterns, label))
        assert set(tree.outputs[i]) == naive_outputs(patterns, label)
        for byte in set(tree.alphabet) | {ord("z")}:
            expected = naive_transition(patterns, label, byte)
            assert tree.next_node(i, byte) == by_label[expected]


def test_laws_exhaustive_small_sets():
    singles = [bytes(w) for k in range(1, 5) for w in itertools.product(b"ab", repeat=k)]
    for p in singles:
        _check_tree_laws([p])
    shorts = [bytes(w) for k in range(1, 4) for w in itertools.product(b"ab", repeat=k)]
    for a, b in itertools.combinations(shorts, 2):
        _check_tree_laws([a, b])
    tiny = [bytes(w) for k in range(1, 3) for w in itertools.product(b"ab", repeat=k)]
    for combo in itertools.combinations(tiny, 3):
        _check_tree_laws(list(combo))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.text(alphabet="abc", min_size=1, max_size=4), min_size=1, max_size=4))
def test_laws_random_sets(pattern_texts):
    _check_tree_laws([p.encode() for p in pattern_texts])


def test_staged_construction_matches_build_automaton():
    cs = make_constraint_set(FIXTURE_PATTERNS)
    staged = complete_output_sets(compute_failure_links(build_keyword_tree(cs)))
    whole = build_automaton(cs)
    assert staged.fail == whole.fail
    assert staged.outputs == whole.outputs


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def test_canonicalize_spec_cases():
    got = canonicalize([b"aab", b"aba", b"ba", b"ba"])
    assert got.constraints.patterns == (b"aab", b"aba")
    reasons = {(r.pattern, r.reason) for r in got.removed}
    assert (b"ba", "duplicate") in reasons
    assert (b"ba", "substring") in reasons

    assert canonicalize([b"ab", b"ab"]).constraints.patterns == (b"ab",)
    assert canonicalize([]).constraints.patterns == ()


def test_canonicalize_drops_proper_prefix():
    got = canonicalize([b"ab", b"aba"])
    assert got.constraints.patterns == (b"aba",)
    assert got.removed == (got.removed[0],)
    assert got.removed[0].pattern == b"ab"
    assert got.removed[0].kept == b"aba"


def test_canonicalize_keeps_input_order():
    got = canonicalize([b"ca", b"ab", b"bb"])
    assert got.constraints.patterns == (b"ca", b"ab", b"bb")


def test_canonicalize_witnesses_contain_dropped():
    got = canonicalize([b"abab", b"ba", b"abab", b"aba", b"c"])
    for removal in got.removed:
        assert removal.pattern in removal.kept
        if removal.reason == "substring":
            assert len(removal.pattern) < len(removal.kept)
            assert removal.kept in got.constraints.patterns


def test_canonicalize_limit_applies_to_survivors():
    pats = [b"aa" * (i + 1) for i in range(17)]  # each a prefix of the next
    got = canonicalize(pats)
    assert got.constraints.d == 1
    with pytest.raises(TooManyConstraintsError):
        canonicalize([bytes([97 + i, 97 + i]) for i in range(17)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.text(alphabet="abc", min_size=1, max_size=4), max_size=6))
def test_canonicalize_idempotent_and_substring_free(pattern_texts):
    pats = [p.encode() for p in pattern_texts]
    once = canonicalize(pats)
    survivors = once.constraints.patterns
    for a in survivors:
        for b in survivors:
            if a is not b:
                assert a not in b
    again = canonicalize(survivors)
    assert again.constraints.patterns == survivors
    assert again.removed == ()


def test_canonicalize_rejects_empty_pattern():
    with pytest.raises(EmptyPatternError):
        canonicalize([b"ab", b""])


# ---------------------------------------------------------------------------
# dot export
# ---------------------------------------------------------------------------

def test_to_dot_lists_nodes_and_edges(fixture_tree):
    dot = to_dot(fixture_tree)
    assert dot.startswith("digraph keyword_tree {")
    assert 'n3 [label="3:aab"];' in dot
    assert 'n0 -> n1 [label="a"];' in dot
    assert "n5 -> n7 [style=dashed" in dot
