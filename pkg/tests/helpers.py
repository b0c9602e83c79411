"""Brute-force primary-occurrence enumeration, independent of the grids."""

from collections import defaultdict

from rlindex.grammar import Grammar, compute_occurrence_model


def primary_by_cut(g: Grammar, pattern: str):
    """Weighted primary occurrences, split as (normal[q], type1[q], type2 total).

    Every occurrence of the pattern inside exp(A) that crosses a boundary
    between A's children is primary with locus A; it is attributed to the
    cut given by its first crossed boundary and weighted by c(A).  For a
    run-length rule, crossing exactly one copy boundary makes it type-1,
    more makes it type-2.
    """
    occ = compute_occurrence_model(g)
    m = len(pattern)
    normal: dict[int, int] = defaultdict(int)
    type1: dict[int, int] = defaultdict(int)
    type2 = 0
    for rule in g.nonterminal_rules():
        c = occ.counts[rule.head]
        if c == 0:
            continue
        text = g.expand(rule.head)
        if rule.is_run:
            lb = g.lengths[rule.base]
            cuts = [k * lb for k in range(1, rule.exponent)]
        else:
            cuts, off = [], 0
            for y in rule.body[:-1]:
                off += g.lengths[y]
                cuts.append(off)
        start = text.find(pattern)
        while start >= 0:
            crossed = [b for b in cuts if start < b < start + m]
            if crossed:
                q = crossed[0] - start
                if not rule.is_run:
                    normal[q] += c
                elif len(crossed) == 1:
                    type1[q] += c
                else:
                    type2 += c
            start = text.find(pattern, start + 1)
    return dict(normal), dict(type1), type2
