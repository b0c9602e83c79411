"""Index construction: the main grid and the per-period grids of run-length rules.

Main grid points, one per grammar-tree boundary:

* NORMAL: sequence rule ``A -> a_1 .. a_t``, child ``i < t``:
  (rev exp(a_i), exp(a_{i+1}) .. exp(a_t)), weight c(A).
* TYPE1: run-length rule ``A -> B^s``: (rev exp(B), exp(B)),
  weight c(A) * (s - 1); ignored when locating.
* LOCATE: run-length rule ``A -> B^s``: (rev exp(B), exp(B)^(s-1)),
  weight 0; used only when locating.

Every run-length rule is also filed, through its transformed form
``A -> B_p^(s')`` with p = p(exp(A)), under the signature of
exp(A)[1..p] in ``Index.periodic``; that entry holds a 4-payload grid with
one row per distinct |B| and one column per distinct s'.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cmp_to_key

from .errors import SignatureCollision
from .extraction import XRef, YPower, YSuffix, compare_lazy
from .grammar import Grammar, OccurrenceModel, compute_occurrence_model
from .grid import Grid, GridPoint
from .periods import SignatureScheme, code, primitive_root_length

NORMAL, TYPE1, LOCATE = 0, 1, 2
KIND_NAMES = {NORMAL: "normal", TYPE1: "type1", LOCATE: "locate"}
MAX_REBASE = 8


@dataclass(frozen=True)
class MainPoint:
    kind: int
    rule: int
    child: int  # NORMAL: i, so the X-string is rev(exp(body[i-1])); run-length: 0
    offset: int  # NORMAL: |exp(a_1..a_i)|; run-length: |B|
    weight: int
    xref: XRef
    yref: YSuffix | YPower


@dataclass(frozen=True)
class TransformedRule:
    rule: int
    base: int
    s: int
    p: int
    beta: int
    s_prime: int


@dataclass
class PeriodicEntry:
    """Grid G_pi for one period string pi (payloads c, c*s, c*beta, c*s')."""

    sig: int
    p: int
    key_rule: int
    rows: list[int]
    cols: list[int]
    rules: list[int]
    grid: Grid

    def rows_upto(self, limit: int) -> int:
        """Number of rows with |B| <= limit (rows are 1-based ranks)."""
        return bisect_right(self.rows, limit)

    def first_row_from(self, limit: int) -> int:
        return bisect_left(self.rows, limit) + 1

    def first_col_from(self, limit: int) -> int:
        return bisect_left(self.cols, limit) + 1


class Index:
    def __init__(
        self,
        grammar: Grammar,
        occ: OccurrenceModel,
        scheme: SignatureScheme,
        points: list[MainPoint],
        x_order: list[int],
        y_order: list[int],
        periodic: dict[int, PeriodicEntry],
        seed: int = 0,
    ):
        self.grammar = grammar
        self.occ = occ
        self.scheme = scheme
        self.seed = seed
        self.points = points
        self.x_order = x_order
        self.y_order = y_order
        self.periodic = periodic
        x_rank = [0] * len(points)
        y_rank = [0] * len(points)
        for r, pid in enumerate(x_order, 1):
            x_rank[pid] = r
        for r, pid in enumerate(y_order, 1):
            y_rank[pid] = r
        self.x_rank = x_rank
        self.y_rank = y_rank
        n = len(points)
        self.grid = Grid(
            [GridPoint(x_rank[i], y_rank[i], (pt.weight,)) for i, pt in enumerate(points)], 1, n, n
        )

    # convenience wrappers; the real work lives in the query modules

    def count(self, pattern: str) -> int:
        from .count import count

        return count(self, pattern)

    def locate(self, pattern: str) -> list[int]:
        from .locate import locate

        return locate(self, pattern)

    def extract(self, i: int, j: int) -> str:
        from .locate import extract_text

        return extract_text(self, i, j)

    @property
    def n(self) -> int:
        return self.grammar.n

    def type1_weights(self) -> dict[str, int]:
        names = self.grammar.names
        return {names[p.rule]: p.weight for p in self.points if p.kind == TYPE1}

    def stats(self) -> dict[str, int | str]:
        from .serial import serialize_index

        g = self.grammar
        sizes = " ".join(
            f"{g.access.prefix(e.key_rule, e.p) if e.p <= 16 else '<%d>' % e.p}:{len(e.grid)}"
            for e in sorted(self.periodic.values(), key=lambda e: (e.p, e.key_rule))
        )
        return {
            "n": g.n,
            "sigma": g.sigma,
            "g_rl": g.g_rl,
            "#rules": len(g.nonterminal_rules()),
            "#run-length rules": len(g.run_rules()),
            "main-grid points": len(self.points),
            "#H keys": len(self.periodic),
            "G_pi sizes": sizes or "-",
            "index bytes": len(serialize_index(self)),
        }


def transform_rule(g: Grammar, head: int, roots: dict[int, int] | None = None) -> TransformedRule:
    """A -> B^s rewritten as A -> B_p^(s') with p = p(exp(A))."""
    rule = g.rules[head]
    b, s = rule.base, rule.exponent
    p = _root_length(g, b, roots if roots is not None else {})
    beta = g.lengths[b] // p
    return TransformedRule(head, b, s, p, beta, s * beta)


def _root_length(g: Grammar, x: int, memo: dict[int, int]) -> int:
    # exp(B^t) has the same primitive root as exp(B)
    chain = []
    while x not in memo and not g.is_terminal(x) and g.rules[x].is_run:
        chain.append(x)
        x = g.rules[x].base
    if x not in memo:
        memo[x] = 1 if g.is_terminal(x) else primitive_root_length(g.access.full(x))
    for y in chain:
        memo[y] = memo[x]
    return memo[x]


class _Fingerprints:
    """kappa of prefixes of expansions, computed on the grammar."""

    def __init__(self, g: Grammar, scheme: SignatureScheme):
        self.g = g
        self.scheme = scheme
        self._full: dict[int, int] = {}

    def full(self, x: int) -> int:
        if x in self._full:
            return self._full[x]
        g, sc = self.g, self.scheme
        if g.is_terminal(x):
            val = code(g.chars[x - 1])
        else:
            rule = g.rules[x]
            if rule.is_run:
                b = rule.base
                val = self.full(b) * sc.geometric(sc.power(g.lengths[b]), rule.exponent) % sc.modulus
            else:
                val, pos = 0, 0
                for y in rule.body:
                    val = (val + sc.power(pos) * self.full(y)) % sc.modulus
                    pos += g.lengths[y]
        self._full[x] = val
        return val

    def prefix(self, x: int, k: int) -> int:
        g, sc = self.g, self.scheme
        if k == 0:
            return 0
        if k == g.lengths[x]:
            return self.full(x)
        rule = g.rules[x]
        if rule.is_run:
            b = rule.base
            lb = g.lengths[b]
            whole, rest = divmod(k, lb)
            val = self.full(b) * sc.geometric(sc.power(lb), whole) % sc.modulus
            if rest:
                val = (val + sc.power(whole * lb) * self.prefix(b, rest)) % sc.modulus
            return val
        val, pos = 0, 0
        for y in rule.body:
            ly = g.lengths[y]
            part = self.full(y) if pos + ly <= k else self.prefix(y, k - pos)
            val = (val + sc.power(pos) * part) % sc.modulus
            pos += ly
            if pos >= k:
                break
        return val


def main_grid_points(g: Grammar, occ: OccurrenceModel) -> list[MainPoint]:
    points = []
    for rule in g.nonterminal_rules():
        c = occ.counts[rule.head]
        if rule.is_run:
            b, s = rule.base, rule.exponent
            lb = g.lengths[b]
            points.append(MainPoint(TYPE1, rule.head, 0, lb, c * (s - 1), XRef(b), YPower(b, 1)))
            points.append(MainPoint(LOCATE, rule.head, 0, lb, 0, XRef(b), YPower(b, s - 1)))
            continue
        off = 0
        for i, y in enumerate(rule.body[:-1], 1):
            off += g.lengths[y]
            points.append(MainPoint(NORMAL, rule.head, i, off, c, XRef(y), YSuffix(rule.head, i)))
    return points


def sort_coordinates(g: Grammar, refs: list, ties: list[tuple]) -> list[int]:
    """Indices of ``refs`` in lexicographic order of their strings, ties by ``ties``."""

    def cmp(i: int, j: int) -> int:
        c = compare_lazy(g, refs[i], refs[j])
        if c:
            return c
        return (ties[i] > ties[j]) - (ties[i] < ties[j])

    return sorted(range(len(refs)), key=cmp_to_key(cmp))


def _periodic_family(
    g: Grammar, occ: OccurrenceModel, scheme: SignatureScheme, transformed: list[TransformedRule]
) -> dict[int, PeriodicEntry]:
    fp = _Fingerprints(g, scheme)
    groups: dict[tuple[int, int], list[TransformedRule]] = {}
    for tr in transformed:
        sig = fp.prefix(tr.base, tr.p)
        groups.setdefault((sig, tr.p), []).append(tr)
    seen_sigs: set[int] = set()
    family: dict[int, PeriodicEntry] = {}
    for (sig, p), members in groups.items():
        if sig in seen_sigs:
            raise SignatureCollision(f"two period strings share signature {sig}")
        seen_sigs.add(sig)
        key = g.access.prefix(members[0].base, p)
        for tr in members[1:]:
            if g.access.prefix(tr.base, p) != key:
                raise SignatureCollision(f"distinct period strings of length {p} share signature {sig}")
        rows = sorted({g.lengths[tr.base] for tr in members})
        cols = sorted({tr.s_prime for tr in members})
        pts = []
        for tr in members:
            c = occ.counts[tr.rule]
            row = bisect_left(rows, g.lengths[tr.base]) + 1
            col = bisect_left(cols, tr.s_prime) + 1
            pts.append(GridPoint(col, row, (c, c * tr.s, c * tr.beta, c * tr.s_prime)))
        family[sig] = PeriodicEntry(
            sig, p, members[0].rule, rows, cols, [tr.rule for tr in members],
            Grid(pts, 4, len(cols), len(rows)),
        )
    return family


def build_index(g: Grammar, seed: int = 0) -> Index:
    occ = compute_occurrence_model(g)
    points = main_grid_points(g, occ)
    ties = [(p.rule, p.child, p.kind) for p in points]
    x_order = sort_coordinates(g, [p.xref for p in points], ties)
    y_order = sort_coordinates(g, [p.yref for p in points], ties)

    roots: dict[int, int] = {}
    transformed = [transform_rule(g, r.head, roots) for r in g.run_rules()]
    for attempt in range(MAX_REBASE):
        scheme = SignatureScheme.from_seed(seed, attempt)
        try:
            periodic = _periodic_family(g, occ, scheme, transformed)
            break
        except SignatureCollision:
            continue
    else:
        raise SignatureCollision(f"no collision-free base after {MAX_REBASE} attempts")
    return Index(g, occ, scheme, points, x_order, y_order, periodic, seed)
