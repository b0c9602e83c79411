import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlindex.errors import OverflowRisk, RankOutOfRange
from rlindex.grid import Grid, GridPoint, build_grid, range_aggregate, range_report


def naive(points, x1, x2, y1, y2, k):
    hit = [i for i, p in enumerate(points) if x1 <= p.x <= x2 and y1 <= p.y <= y2]
    return tuple(sum(points[i].payload[c] for i in hit) for c in range(k)), sorted(hit)


def random_points(rng, n, nx, ny, k):
    return [GridPoint(rng.randint(1, nx), rng.randint(1, ny), tuple(rng.randint(0, 50) for _ in range(k))) for _ in range(n)]


def test_thousand_rectangles_against_scan():
    rng = random.Random(1)
    for trial in range(10):
        nx, ny, k = rng.randint(1, 40), rng.randint(1, 40), rng.choice([1, 4])
        pts = random_points(rng, rng.randint(0, 120), nx, ny, k)
        grid = build_grid(pts, k, nx, ny)
        for _ in range(100):
            x1, x2 = sorted(rng.randint(1, nx) for _ in range(2))
            y1, y2 = sorted(rng.randint(1, ny) for _ in range(2))
            total, hit = naive(pts, x1, x2, y1, y2, k)
            assert range_aggregate(grid, x1, x2, y1, y2) == total
            assert sorted(range_report(grid, x1, x2, y1, y2)) == hit


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(0, 9)), max_size=40),
    st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.integers(1, 9),
)
def test_aggregate_property(raw, a, b, c, d):
    pts = [GridPoint(x, y, (w, 2 * w)) for x, y, w in raw]
    grid = Grid(pts, 2, 9, 9)
    x1, x2 = min(a, b), max(a, b)
    y1, y2 = min(c, d), max(c, d)
    assert grid.range_aggregate(x1, x2, y1, y2) == naive(pts, x1, x2, y1, y2, 2)[0]


def test_empty_and_inverted_ranges():
    grid = Grid([GridPoint(1, 1, (3,))], 1, 2, 2)
    assert grid.range_aggregate(2, 1, 1, 2) == (0,)
    assert grid.range_aggregate(1, 2, 2, 1) == (0,)
    assert grid.range_report(2, 1, 1, 1) == []
    assert Grid([], 1, 0, 0).range_aggregate(1, 0, 1, 0) == (0,)


def test_duplicate_cells_accumulate():
    grid = Grid([GridPoint(2, 2, (1,)), GridPoint(2, 2, (5,))], 1, 3, 3)
    assert grid.range_aggregate(1, 3, 1, 3) == (6,)
    assert sorted(grid.range_report(2, 2, 2, 2)) == [0, 1]


def test_errors():
    with pytest.raises(RankOutOfRange):
        Grid([GridPoint(4, 1, (1,))], 1, 3, 3)
    with pytest.raises(ValueError):
        Grid([GridPoint(1, 1, (1, 2))], 1, 3, 3)
    with pytest.raises(ValueError):
        Grid([GridPoint(1, 1, (-1,))], 1, 3, 3)
    with pytest.raises(OverflowRisk):
        Grid([GridPoint(1, 1, (1 << 62,)), GridPoint(2, 2, (1 << 62,))], 1, 3, 3)
    grid = Grid([GridPoint(1, 1, (1,))], 1, 3, 3)
    with pytest.raises(RankOutOfRange):
        grid.range_aggregate(0, 2, 1, 1)
    with pytest.raises(RankOutOfRange):
        grid.range_aggregate(1, 2, 1, 4)
