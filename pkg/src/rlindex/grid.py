"""Static weighted point grids with orthogonal range sums and reporting.

Layered merge structure: points are sorted by x, and level ``l`` stores
the y-coordinates sorted inside aligned blocks of ``2**l`` points together
with running payload sums.  A query splits its x-interval into O(log N)
blocks and binary-searches y in each, for O(log^2 N) time and O(N log N)
words of space.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from heapq import merge
from itertools import accumulate

from .errors import OverflowRisk, RankOutOfRange

LIMIT = 1 << 63


@dataclass(frozen=True)
class GridPoint:
    x: int
    y: int
    payload: tuple[int, ...]


class Grid:
    def __init__(self, points: list[GridPoint], k: int, nx: int, ny: int):
        self.k = k
        self.nx = nx
        self.ny = ny
        self.points = list(points)
        totals = [0] * k
        for p in self.points:
            if not (1 <= p.x <= nx and 1 <= p.y <= ny):
                raise RankOutOfRange(f"point ({p.x}, {p.y}) outside [1..{nx}] x [1..{ny}]")
            if len(p.payload) != k or min(p.payload, default=0) < 0:
                raise ValueError(f"payload {p.payload} is not {k} non-negative integers")
            for c in range(k):
                totals[c] += p.payload[c]
        if any(t >= LIMIT for t in totals):
            raise OverflowRisk(f"payload totals {totals} do not fit in 63 bits")
        self.totals = tuple(totals)

        order = sorted(range(len(self.points)), key=lambda i: (self.points[i].x, self.points[i].y, i))
        self._xs = [self.points[i].x for i in order]
        level_ids = order
        self._ys: list[list[int]] = []
        self._ids: list[list[int]] = []
        self._cum: list[list[list[int]]] = []
        n = len(order)
        width = 1
        while True:
            ys = [self.points[i].y for i in level_ids]
            self._ids.append(level_ids)
            self._ys.append(ys)
            self._cum.append(
                [[0, *accumulate(self.points[i].payload[c] for i in level_ids)] for c in range(k)]
            )
            if width >= n:
                break
            merged = []
            for start in range(0, n, 2 * width):
                left = level_ids[start : start + width]
                right = level_ids[start + width : start + 2 * width]
                merged.extend(merge(left, right, key=lambda i: (self.points[i].y, i)))
            level_ids = merged
            width *= 2

    def __len__(self) -> int:
        return len(self.points)

    def _blocks(self, x1: int, x2: int):
        if x1 > x2 or not self.points:
            return
        if x1 < 1 or x2 > self.nx:
            raise RankOutOfRange(f"x-range [{x1}, {x2}] outside [1..{self.nx}]")
        lo = bisect_left(self._xs, x1)
        hi = bisect_right(self._xs, x2)
        n = len(self._xs)
        level = 0
        while lo < hi:
            if lo & 1:
                yield level, lo << level, min((lo + 1) << level, n)
                lo += 1
            if hi & 1:
                hi -= 1
                yield level, hi << level, min((hi + 1) << level, n)
            lo >>= 1
            hi >>= 1
            level += 1

    def _check_y(self, y1: int, y2: int) -> bool:
        if y1 > y2:
            return False
        if y1 < 1 or y2 > self.ny:
            raise RankOutOfRange(f"y-range [{y1}, {y2}] outside [1..{self.ny}]")
        return True

    def range_aggregate(self, x1: int, x2: int, y1: int, y2: int) -> tuple[int, ...]:
        """Componentwise payload sum over [x1, x2] x [y1, y2]; empty ranges give zeros."""
        out = [0] * self.k
        if not self._check_y(y1, y2):
            return tuple(out)
        for level, start, end in self._blocks(x1, x2):
            ys = self._ys[level]
            a = bisect_left(ys, y1, start, end)
            b = bisect_right(ys, y2, a, end)
            if a < b:
                cum = self._cum[level]
                for c in range(self.k):
                    out[c] += cum[c][b] - cum[c][a]
        return tuple(out)

    def range_report(self, x1: int, x2: int, y1: int, y2: int) -> list[int]:
        """Indices (into ``points``) of every point in the rectangle, any order."""
        out: list[int] = []
        if not self._check_y(y1, y2):
            return out
        for level, start, end in self._blocks(x1, x2):
            ys = self._ys[level]
            a = bisect_left(ys, y1, start, end)
            b = bisect_right(ys, y2, a, end)
            out.extend(self._ids[level][a:b])
        return out


def build_grid(points: list[GridPoint], k: int, nx: int | None = None, ny: int | None = None) -> Grid:
    nx = nx if nx is not None else max((p.x for p in points), default=0)
    ny = ny if ny is not None else max((p.y for p in points), default=0)
    return Grid(points, k, nx, ny)


def range_aggregate(grid: Grid, x1: int, x2: int, y1: int, y2: int) -> tuple[int, ...]:
    return grid.range_aggregate(x1, x2, y1, y2)


def range_report(grid: Grid, x1: int, x2: int, y1: int, y2: int) -> list[int]:
    return grid.range_report(x1, x2, y1, y2)
