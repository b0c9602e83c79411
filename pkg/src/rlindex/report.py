"""Query timing runs, written out as a TSV table and a log-log plot."""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .count import count
from .index import Index


@dataclass
class Timing:
    m: int
    patterns: int
    median_ms: float
    max_ms: float
    total_occ: int


def sample_patterns(idx: Index, m: int, how_many: int, seed: int) -> list[str]:
    """Random substrings of T of length m, extracted through the grammar."""
    rng = random.Random(f"bench-{seed}-{m}")
    n = idx.n
    if m > n:
        return []
    out = []
    for _ in range(how_many):
        i = rng.randint(1, n - m + 1)
        out.append(idx.extract(i, i + m - 1))
    return out


def time_counts(idx: Index, lengths: list[int], how_many: int = 20, seed: int = 0) -> list[Timing]:
    rows = []
    for m in lengths:
        pats = sample_patterns(idx, m, how_many, seed)
        if not pats:
            continue
        count(idx, pats[0])  # warm the prefix caches
        spent = []
        occ = 0
        for p in pats:
            t0 = time.perf_counter()
            occ += count(idx, p)
            spent.append((time.perf_counter() - t0) * 1000.0)
        rows.append(Timing(m, len(pats), statistics.median(spent), max(spent), occ))
    return rows


def loglog_slope(xs: list[float], ys: list[float]) -> float:
    """Least-squares slope of log y against log x."""
    fit = statistics.linear_regression([math.log(x) for x in xs], [math.log(max(y, 1e-9)) for y in ys])
    return fit.slope


def write_tsv(rows: list[Timing], path: Path) -> None:
    lines = ["m\tpatterns\tmedian_ms\tmax_ms\ttotal_occ"]
    lines += [f"{r.m}\t{r.patterns}\t{r.median_ms:.4f}\t{r.max_ms:.4f}\t{r.total_occ}" for r in rows]
    path.write_text("\n".join(lines) + "\n")


def plot_timings(rows: list[Timing], path: Path, title: str = "") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ms = [r.m for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.loglog(ms, [r.median_ms for r in rows], "o-", label="median")
    ax.loglog(ms, [r.max_ms for r in rows], "s--", alpha=0.6, label="max")
    if len(rows) >= 2:
        # reference line of slope 2 through the first median
        ref = [rows[0].median_ms * (m / ms[0]) ** 2 for m in ms]
        ax.loglog(ms, ref, ":", color="grey", label="m^2")
    ax.set_xlabel("pattern length m")
    ax.set_ylabel("count time (ms)")
    ax.set_xticks(ms)
    ax.set_xticklabels([str(m) for m in ms])
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def write_report(rows: list[Timing], prefix: Path, title: str = "") -> tuple[Path, Path]:
    tsv = prefix.with_suffix(".tsv")
    png = prefix.with_suffix(".png")
    write_tsv(rows, tsv)
    plot_timings(rows, png, title)
    return tsv, png
