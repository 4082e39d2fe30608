from __future__ import annotations

import pytest

from mstrlcs import build_automaton, make_constraint_set

FIXTURE_PATTERNS = [b"aab", b"aba", b"ba"]


@pytest.fixture(scope="session")
def fixture_tree():
    """Completed automaton for the golden three-pattern constraint set."""
    return build_automaton(make_constraint_set(FIXTURE_PATTERNS))
