"""Counting occurrences of a pattern.

The total is assembled from three passes:

1. main pass: every cut q in [1, m-1] sums the main-grid weights in the
   rectangle (range of rev(P[1..q]) in X) x (range of P[q+1..m] in Y).  This
   counts sequence-rule occurrences and, through the TYPE1 points, every
   run-length occurrence that crosses exactly one copy boundary of B.
2. periodic pass: with p = p(P), cuts q in [1, min(p, m-p)] look up
   P[q+1..q+p] among the period strings and add, for rules with
   |B| < m-q and s' > M = ceil((m-q)/p), c(A) * (s' - M).  Some of those
   alignments cross only one copy boundary and were already counted by the
   main pass: exactly (s-1) * (2*beta - M) of them when positive, which is
   subtracted over the rows |B| >= p * ceil((M+1)/2).
3. short-root pass: a rule whose B is itself primitive (beta = 1) can hold
   occurrences crossing two boundaries even when p(P) is shorter than
   |B|.  Then |B| is a period of P larger than m - p(P), so those rules are
   reached through the remaining periods of P.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .index import LOCATE, NORMAL, TYPE1, Index, PeriodicEntry
from .periods import PrefixSignatures, border_array


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass
class QueryContext:
    pattern: str
    m: int
    border: list[int]
    p: int
    sigs: PrefixSignatures

    @classmethod
    def create(cls, idx: Index, pattern: str) -> QueryContext:
        border = border_array(pattern)
        m = len(pattern)
        return cls(pattern, m, border, m - border[-1], PrefixSignatures(pattern, idx.scheme))

    def segments(self, q: int) -> int:
        """M(q) = ceil((m - q) / p)."""
        return _ceil_div(self.m - q, self.p)


@dataclass
class CountBreakdown:
    normal: dict[int, int] = field(default_factory=dict)
    type1: dict[int, int] = field(default_factory=dict)
    periodic_add: dict[int, int] = field(default_factory=dict)
    periodic_sub: dict[int, int] = field(default_factory=dict)
    short_root: int = 0
    total: int = 0


def normalize_pattern(pattern: str | bytes) -> str:
    if isinstance(pattern, (bytes, bytearray)):
        return pattern.decode("latin-1")
    return pattern


def x_range(idx: Index, reversed_prefix: str) -> tuple[int, int]:
    """1-based rank interval of X-strings having ``reversed_prefix`` as a prefix."""
    g = idx.grammar
    k = len(reversed_prefix)
    pts = idx.points

    def key(pid: int) -> str:
        return pts[pid].xref.head(g, k)

    lo = bisect_left(idx.x_order, reversed_prefix, key=key)
    hi = bisect_right(idx.x_order, reversed_prefix, lo, key=key)
    return lo + 1, hi


def y_range(idx: Index, suffix: str) -> tuple[int, int]:
    g = idx.grammar
    k = len(suffix)
    pts = idx.points

    def key(pid: int) -> str:
        return pts[pid].yref.head(g, k)

    lo = bisect_left(idx.y_order, suffix, key=key)
    hi = bisect_right(idx.y_order, suffix, lo, key=key)
    return lo + 1, hi


def cut_ranges(idx: Index, pattern: str, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Grid ranges for the cut P[1..q] . P[q+1..m] (empty ranges have lo > hi)."""
    if not 1 <= q < len(pattern):
        raise ValueError(f"cut {q} outside [1, {len(pattern) - 1}]")
    return x_range(idx, pattern[:q][::-1]), y_range(idx, pattern[q:])


def _lookup(idx: Index, ctx: QueryContext, q: int, length: int) -> PeriodicEntry | None:
    entry = idx.periodic.get(ctx.sigs.substring(q + 1, q + length))
    if entry is None or entry.p != length:
        return None
    # signatures are only trusted after comparing the actual characters
    if idx.grammar.access.prefix(entry.key_rule, length) != ctx.pattern[q : q + length]:
        return None
    return entry


def periodic_terms(idx: Index, ctx: QueryContext, q: int) -> tuple[int, int]:
    """(added type-2 alignments, subtracted double counts) for cut q."""
    p, m = ctx.p, ctx.m
    entry = _lookup(idx, ctx, q, p)
    if entry is None:
        return 0, 0
    d = m - q
    big_m = _ceil_div(d, p)
    top = entry.rows_upto(d - 1)
    if top == 0:
        return 0, 0
    ncols = len(entry.cols)
    c, _, _, cs2 = entry.grid.range_aggregate(entry.first_col_from(big_m + 1), ncols, 1, top)
    added = cs2 - big_m * c
    sub = 0
    low = entry.first_row_from(p * _ceil_div(big_m + 1, 2))
    if low <= top:
        c, cs, cb, cs2 = entry.grid.range_aggregate(1, ncols, low, top)
        sub = 2 * cs2 - 2 * cb - big_m * cs + big_m * c
    return added, sub


def periodic_contribution(idx: Index, ctx: QueryContext, q: int) -> int:
    added, sub = periodic_terms(idx, ctx, q)
    return added - sub


def short_root_contribution(idx: Index, ctx: QueryContext) -> int:
    """Occurrences in rules with beta = 1 whose root is a long period of P."""
    m, p = ctx.m, ctx.p
    total = 0
    b = ctx.border[-1]
    while b >= 2:
        period = m - b
        if b < p and period % p:
            for q in range(1, b):
                entry = _lookup(idx, ctx, q, period)
                if entry is None:
                    continue
                row = entry.first_row_from(period)
                if row > len(entry.rows) or entry.rows[row - 1] != period:
                    continue
                big_m = _ceil_div(m - q, period)
                c, _, _, cs2 = entry.grid.range_aggregate(
                    entry.first_col_from(big_m + 1), len(entry.cols), row, row
                )
                total += cs2 - big_m * c
        b = ctx.border[b - 1]
    return total


def _trivial(idx: Index, pattern: str) -> int | None:
    if not pattern:
        raise ValueError("empty pattern")
    g = idx.grammar
    if len(pattern) > g.n or any(ch not in g.code for ch in set(pattern)):
        return 0
    if len(pattern) == 1:
        return idx.occ.occ1[pattern]
    return None


def count(idx: Index, pattern: str | bytes) -> int:
    """Exact number of occurrences of the pattern in the indexed text."""
    pattern = normalize_pattern(pattern)
    trivial = _trivial(idx, pattern)
    if trivial is not None:
        return trivial
    m = len(pattern)
    total = 0
    for q in range(1, m):
        (x1, x2), (y1, y2) = cut_ranges(idx, pattern, q)
        if x1 <= x2 and y1 <= y2:
            total += idx.grid.range_aggregate(x1, x2, y1, y2)[0]
    ctx = QueryContext.create(idx, pattern)
    for q in range(1, min(ctx.p, m - ctx.p) + 1):
        total += periodic_contribution(idx, ctx, q)
        assert total >= 0, "periodic correction drove the count negative"
    total += short_root_contribution(idx, ctx)
    return total


def count_breakdown(idx: Index, pattern: str | bytes) -> CountBreakdown:
    """Same total as ``count`` with the per-cut pieces kept apart (diagnostics)."""
    pattern = normalize_pattern(pattern)
    out = CountBreakdown()
    trivial = _trivial(idx, pattern)
    if trivial is not None:
        out.total = trivial
        return out
    m = len(pattern)
    for q in range(1, m):
        (x1, x2), (y1, y2) = cut_ranges(idx, pattern, q)
        normal = type1 = 0
        for pid in idx.grid.range_report(x1, x2, y1, y2):
            pt = idx.points[pid]
            if pt.kind == NORMAL:
                normal += pt.weight
            elif pt.kind == TYPE1:
                type1 += pt.weight
            else:
                assert pt.kind == LOCATE and pt.weight == 0
        out.normal[q] = normal
        out.type1[q] = type1
    ctx = QueryContext.create(idx, pattern)
    for q in range(1, min(ctx.p, m - ctx.p) + 1):
        out.periodic_add[q], out.periodic_sub[q] = periodic_terms(idx, ctx, q)
    out.short_root = short_root_contribution(idx, ctx)
    out.total = (
        sum(out.normal.values()) + sum(out.type1.values()) + sum(out.periodic_add.values())
        - sum(out.periodic_sub.values()) + out.short_root
    )
    return out
