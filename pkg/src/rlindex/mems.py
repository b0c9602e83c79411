"""k-MEMs: maximal substrings of a pattern occurring at least k times."""

from __future__ import annotations

from collections.abc import Callable

from .count import count, normalize_pattern
from .index import Index


def k_mems_with_counts(
    idx: Index, pattern: str | bytes, k: int, counter: Callable[[Index, str], int] = count
) -> list[tuple[int, int, int]]:
    """(i, j, count) for every k-MEM P[i..j], 1-based, increasing i.

    Two pointers: the right end j(i) reached from i never decreases, so at
    most one failed extension per i plus m successful ones, <= 2m counts.
    """
    pattern = normalize_pattern(pattern)
    if k < 1:
        raise ValueError("k must be at least 1")
    if not pattern:
        raise ValueError("empty pattern")
    m = len(pattern)
    out = []
    j = 0  # P[i..j] has count >= k (empty when j < i)
    last = 0  # right end of the previous MEM
    best = 0
    for i in range(1, m + 1):
        if j < i - 1:
            j = i - 1
        while j < m:
            c = counter(idx, pattern[i - 1 : j + 1])
            if c < k:
                break
            j += 1
            best = c
        if j >= i and j > last:
            # j > last means at least one extension succeeded from this i
            out.append((i, j, best))
            last = j
        best = 0
    return out


def k_mems(idx: Index, pattern: str | bytes, k: int) -> list[tuple[int, int]]:
    return [(i, j) for i, j, _ in k_mems_with_counts(idx, pattern, k)]
