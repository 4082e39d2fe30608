"""Constrained LCS: the longest common subsequence of two strings that
contains every pattern of a constraint set as a contiguous substring.

The solver combines a keyword-tree (Aho-Corasick style) automaton over the
patterns with a dynamic program whose states pair an automaton node with a
bit mask of already-contained patterns.  A retained table supports exact
traceback of one optimal sequence, and an exhaustive oracle provides an
independent cross-check on small instances.
"""

from .automaton import (
    DEFAULT_MAX_CONSTRAINTS,
    Canonicalization,
    ConstraintSet,
    KeywordTree,
    Removal,
    as_bytes,
    build_automaton,
    build_keyword_tree,
    canonicalize,
    complete_output_sets,
    compute_failure_links,
    make_constraint_set,
    to_dot,
)
from .errors import (
    ConstrainedLcsError,
    EmptyPatternError,
    InconsistentTableError,
    InstanceTooLargeError,
    InvalidConstraintError,
    MemoryCapExceededError,
    TooManyConstraintsError,
)
from .oracle import (
    OracleResult,
    brute_force_solve,
    contains_all_substrings,
    is_subsequence,
)
from .solver import (
    DEFAULT_MEMORY_CAP_BYTES,
    DpTable,
    SolveResult,
    SolveStats,
    extract_answer,
    predecessor_set,
    solve,
)
from .states import (
    DpState,
    StateRegistry,
    advance_state,
    full_mask,
    mask_from_index,
    mask_members,
    mask_union,
)
from .witness import Witness, backtrack

__version__ = "0.1.0"

__all__ = [
    "Canonicalization",
    "ConstrainedLcsError",
    "ConstraintSet",
    "DEFAULT_MAX_CONSTRAINTS",
    "DEFAULT_MEMORY_CAP_BYTES",
    "DpState",
    "DpTable",
    "EmptyPatternError",
    "InconsistentTableError",
    "InstanceTooLargeError",
    "InvalidConstraintError",
    "KeywordTree",
    "MemoryCapExceededError",
    "OracleResult",
    "Removal",
    "SolveResult",
    "SolveStats",
    "StateRegistry",
    "TooManyConstraintsError",
    "Witness",
    "advance_state",
    "as_bytes",
    "backtrack",
    "brute_force_solve",
    "build_automaton",
    "build_keyword_tree",
    "canonicalize",
    "complete_output_sets",
    "compute_failure_links",
    "contains_all_substrings",
    "extract_answer",
    "full_mask",
    "is_subsequence",
    "make_constraint_set",
    "mask_from_index",
    "mask_members",
    "mask_union",
    "predecessor_set",
    "solve",
    "to_dot",
]
