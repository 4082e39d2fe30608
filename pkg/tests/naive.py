"""Independent reference computations used to cross-check the package.

Everything here is written from first principles (string scans and the
textbook LCS table) so the tests do not trust the code under test.
"""

from __future__ import annotations

import random


def prefix_set(patterns: list[bytes]) -> set[bytes]:
    """All prefixes of all patterns, including the empty string."""
    out = {b""}
    for p in patterns:
        for k in range(1, len(p) + 1):
            out.add(p[:k])
    return out


def longest_suffix_in(labels: set[bytes], word: bytes) -> bytes:
    """Longest suffix of ``word`` that is a member of ``labels``."""
    for length in range(len(word), -1, -1):
        suffix = word[len(word) - length:]
        if suffix in labels:
            return suffix
    raise AssertionError("label set must contain the empty string")


def naive_transition(patterns: list[bytes], label: bytes, byte: int) -> bytes:
    """Expected transition target label for label + byte."""
    return longest_suffix_in(prefix_set(patterns), label + bytes([byte]))


def naive_fail(patterns: list[bytes], label: bytes) -> bytes:
    """Longest proper suffix of ``label`` that is a pattern prefix."""
    return longest_suffix_in(prefix_set(patterns), label[1:])


def naive_outputs(patterns: list[bytes], label: bytes) -> set[int]:
    """1-based indices of patterns that are suffixes of ``label``."""
    return {j for j, p in enumerate(patterns, start=1) if label.endswith(p)}


def substring_indices(patterns: list[bytes], word: bytes) -> set[int]:
    """1-based indices of patterns contained in ``word``."""
    return {j for j, p in enumerate(patterns, start=1) if p in word}


def classic_lcs_len(a: bytes, b: bytes) -> int:
    """Textbook quadratic LCS length with the full three-way recurrence."""
    prev = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        cur = [0] * (len(b) + 1)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[len(b)]


def is_subsequence_ref(z: bytes, s: bytes) -> bool:
    """Reference subsequence check via a greedy index scan."""
    at = 0
    for c in z:
        at = s.find(bytes([c]), at) + 1
        if at == 0:
            return False
    return True


def random_instance(k: int) -> tuple[bytes, bytes, list[bytes]]:
    """Seeded micro instance: n, m <= 10, alphabet <= 3, d <= 2, |P_i| <= 3."""
    rng = random.Random(1_000_003 * k + 7)
    letters = b"abc"[: rng.randint(1, 3)]
    x = bytes(rng.choice(letters) for _ in range(rng.randint(0, 10)))
    y = bytes(rng.choice(letters) for _ in range(rng.randint(0, 10)))
    patterns = [
        bytes(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        for _ in range(rng.randint(0, 2))
    ]
    return x, y, patterns


def random_messy_patterns(k: int) -> tuple[bytes, bytes, list[bytes]]:
    """Instance whose pattern list deliberately has duplicates and substrings."""
    rng = random.Random(77_777 + 13 * k)
    letters = b"abc"[: rng.randint(2, 3)]
    x = bytes(rng.choice(letters) for _ in range(rng.randint(0, 12)))
    y = bytes(rng.choice(letters) for _ in range(rng.randint(0, 12)))
    base = [
        bytes(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        for _ in range(rng.randint(1, 3))
    ]
    messy = list(base)
    for p in base:
        if rng.random() < 0.5:
            messy.append(p)
        if len(p) > 1 and rng.random() < 0.7:
            lo = rng.randrange(len(p))
            hi = rng.randint(lo + 1, len(p))
            if hi - lo < len(p):
                messy.append(p[lo:hi])
    rng.shuffle(messy)
    return x, y, messy
