"""Locating occurrences and extracting text.

Primary occurrences come out of the main grid as (locus, offset) pairs;
each is then copied to every parse-tree node labelled with its locus by
walking the mention lists up to the start symbol.
"""

from __future__ import annotations

from .count import _trivial, cut_ranges, normalize_pattern
from .errors import OutOfRange
from .index import LOCATE, NORMAL, Index


class _Positions:
    """Start positions (0-based) of every parse-tree node labelled X."""

    def __init__(self, idx: Index):
        self.idx = idx
        self.memo: dict[int, list[int]] = {idx.grammar.start: [0]}

    def __call__(self, x: int) -> list[int]:
        got = self.memo.get(x)
        if got is not None:
            return got
        out: list[int] = []
        for mention in self.idx.occ.mentions[x]:
            heads = self(mention.head)
            if mention.repeat == 1:
                off = mention.offset
                out.extend(h + off for h in heads)
            else:
                steps = [mention.offset + k * mention.stride for k in range(mention.repeat)]
                out.extend(h + s for h in heads for s in steps)
        self.memo[x] = out
        return out


def primary_occurrences(idx: Index, pattern: str) -> list[tuple[int, int]]:
    """(locus, 0-based offset inside exp(locus)) for every primary occurrence."""
    g = idx.grammar
    m = len(pattern)
    out = []
    for q in range(1, m):
        (x1, x2), (y1, y2) = cut_ranges(idx, pattern, q)
        for pid in idx.grid.range_report(x1, x2, y1, y2):
            pt = idx.points[pid]
            if pt.kind == NORMAL:
                out.append((pt.rule, pt.offset - q))
            elif pt.kind == LOCATE:
                lb = pt.offset
                s = g.rules[pt.rule].exponent
                t = s - -(-(m - q) // lb)
                out.extend((pt.rule, k * lb - q) for k in range(1, t + 1))
    return out


def locate_unsorted(idx: Index, pattern: str | bytes) -> list[int]:
    """All 1-based occurrence positions, in discovery order, without dedup."""
    pattern = normalize_pattern(pattern)
    if _trivial(idx, pattern) == 0:
        return []
    positions = _Positions(idx)
    if len(pattern) == 1:
        return [h + 1 for h in positions(idx.grammar.code[pattern])]
    out = []
    for locus, off in primary_occurrences(idx, pattern):
        out.extend(h + off + 1 for h in positions(locus))
    return out


def locate(idx: Index, pattern: str | bytes) -> list[int]:
    return sorted(set(locate_unsorted(idx, pattern)))


def extract_text(idx: Index, i: int, j: int) -> str:
    """T[i..j], 1-based inclusive."""
    g = idx.grammar
    if not 1 <= i <= j <= g.n:
        raise OutOfRange(f"[{i}..{j}] outside [1..{g.n}]")
    return g.access.extract(g.start, i, j)
