"""Random access into symbol expansions, and the lazy X/Y coordinate strings.

Nothing here materializes a long expansion unless asked to: extraction
descends the grammar guided by lengths, and run-length nodes jump straight
to the copy holding the requested position.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate

from .errors import OutOfRange

FULL_CAP = 4096
HEAD_CAP = 1 << 16


class Expander:
    """Per-grammar access helper holding prefix/suffix caches."""

    def __init__(self, g):
        self.g = g
        self._offsets: dict[int, list[int]] = {}
        self._full: dict[int, str] = {}
        self._prefix: dict[int, str] = {}
        self._rsuffix: dict[int, str] = {}

    def offsets(self, x: int) -> list[int]:
        offs = self._offsets.get(x)
        if offs is None:
            lengths = self.g.lengths
            offs = [0, *accumulate(lengths[y] for y in self.g.rules[x].body)]
            self._offsets[x] = offs
        return offs

    def full(self, x: int) -> str:
        s = self._full.get(x)
        if s is None:
            out: list[str] = []
            self._emit(x, 0, self.g.lengths[x], out)
            s = "".join(out)
            if len(s) <= FULL_CAP:
                self._full[x] = s
        return s

    def _emit(self, x: int, lo: int, hi: int, out: list[str]) -> None:
        # exp(x)[lo:hi], 0-based half-open, appended to out
        g = self.g
        if x <= g.sigma:
            out.append(g.chars[x - 1])
            return
        length = g.lengths[x]
        if lo == 0 and hi == length and length <= FULL_CAP and x in self._full:
            out.append(self._full[x])
            return
        rule = g.rules[x]
        if rule.is_run:
            b = rule.base
            lb = g.lengths[b]
            first, last = lo // lb, (hi - 1) // lb
            if first == last:
                self._emit(b, lo - first * lb, hi - first * lb, out)
                return
            self._emit(b, lo - first * lb, lb, out)
            middle = last - first - 1
            if middle:
                if lb <= FULL_CAP:
                    out.append(self.full(b) * middle)
                else:
                    for _ in range(middle):
                        self._emit(b, 0, lb, out)
            self._emit(b, 0, hi - last * lb, out)
            return
        offs = self.offsets(x)
        k = bisect_right(offs, lo) - 1
        body = rule.body
        while k < len(body) and offs[k] < hi:
            start = offs[k]
            self._emit(body[k], max(lo, start) - start, min(hi, offs[k + 1]) - start, out)
            k += 1

    def extract(self, x: int, i: int, j: int) -> str:
        """exp(x)[i..j], 1-based inclusive."""
        length = self.g.lengths[x]
        if not 1 <= i <= j <= length:
            raise OutOfRange(f"[{i}..{j}] outside [1..{length}]")
        out: list[str] = []
        self._emit(x, i - 1, j, out)
        return "".join(out)

    def char_at(self, x: int, i: int) -> str:
        return self.extract(x, i, i)

    def prefix(self, x: int, k: int) -> str:
        """First min(k, |x|) characters of exp(x)."""
        k = min(k, self.g.lengths[x])
        cached = self._prefix.get(x)
        if cached is not None and len(cached) >= k:
            return cached[:k]
        want = k if k > HEAD_CAP else min(max(k, 2 * len(cached or "")), self.g.lengths[x], HEAD_CAP)
        out: list[str] = []
        self._emit(x, 0, want, out)
        s = "".join(out)
        if want <= HEAD_CAP:
            self._prefix[x] = s
        return s[:k]

    def rsuffix(self, x: int, k: int) -> str:
        """Last min(k, |x|) characters of exp(x), reversed."""
        length = self.g.lengths[x]
        k = min(k, length)
        cached = self._rsuffix.get(x)
        if cached is not None and len(cached) >= k:
            return cached[:k]
        want = k if k > HEAD_CAP else min(max(k, 2 * len(cached or "")), length, HEAD_CAP)
        out: list[str] = []
        self._emit(x, length - want, length, out)
        s = "".join(out)[::-1]
        if want <= HEAD_CAP:
            self._rsuffix[x] = s
        return s[:k]


def extract(g, x: int | str, i: int, j: int) -> str:
    return g.access.extract(g.symbol(x), i, j)


# -- coordinate strings -------------------------------------------------------


@dataclass(frozen=True)
class XRef:
    """rev(exp(symbol))."""

    symbol: int

    def length(self, g) -> int:
        return g.lengths[self.symbol]

    def head(self, g, k: int) -> str:
        return g.access.rsuffix(self.symbol, k)


@dataclass(frozen=True)
class YSuffix:
    """exp(body[start]) ... exp(body[-1]) of a sequence rule (start is 0-based)."""

    rule: int
    start: int

    def length(self, g) -> int:
        offs = g.access.offsets(self.rule)
        return offs[-1] - offs[self.start]

    def head(self, g, k: int) -> str:
        acc = g.access
        parts = []
        for y in g.rules[self.rule].body[self.start :]:
            if k <= 0:
                break
            piece = acc.prefix(y, k)
            parts.append(piece)
            k -= len(piece)
        return "".join(parts)


@dataclass(frozen=True)
class YPower:
    """exp(base)^count."""

    base: int
    count: int

    def length(self, g) -> int:
        return g.lengths[self.base] * self.count

    def head(self, g, k: int) -> str:
        lb = g.lengths[self.base]
        k = min(k, lb * self.count)
        if k <= lb:
            return g.access.prefix(self.base, k)
        unit = g.access.prefix(self.base, lb) if lb <= HEAD_CAP else None
        if unit is None:
            out: list[str] = []
            g.access._emit(self.base, 0, lb, out)
            unit = "".join(out)
        return (unit * (k // lb + 1))[:k]


def _char(ref, g, k: int) -> str:
    if not 1 <= k <= ref.length(g):
        raise OutOfRange(f"position {k} outside [1..{ref.length(g)}]")
    acc = g.access
    if isinstance(ref, XRef):
        length = g.lengths[ref.symbol]
        return acc.char_at(ref.symbol, length - k + 1)
    if isinstance(ref, YPower):
        lb = g.lengths[ref.base]
        return acc.char_at(ref.base, (k - 1) % lb + 1)
    offs = acc.offsets(ref.rule)
    pos = offs[ref.start] + k
    return acc.char_at(ref.rule, pos)


def symbol_at_x(g, ref: XRef, k: int) -> str:
    """k-th character (1-based) of an X-string."""
    return _char(ref, g, k)


def symbol_at_y(g, ref: YSuffix | YPower, k: int) -> str:
    """k-th character (1-based) of a Y-string."""
    return _char(ref, g, k)


def compare_lazy(g, a, b) -> int:
    """Three-way lexicographic comparison of two coordinate strings.

    Reads growing prefixes of both, so the cost is proportional to the
    length of their common prefix.
    """
    la, lb = a.length(g), b.length(g)
    k = 32
    while True:
        ha, hb = a.head(g, k), b.head(g, k)
        if ha != hb:
            return -1 if ha < hb else 1
        if len(ha) < k:
            # both strings ended with identical content
            return 0 if la == lb else (-1 if la < lb else 1)
        k *= 2
