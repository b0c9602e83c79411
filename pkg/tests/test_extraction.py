import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlindex.errors import OutOfRange
from rlindex.extraction import XRef, YPower, YSuffix, compare_lazy, extract, symbol_at_x, symbol_at_y
from rlindex.grammar import parse_grammar
from rlindex.oracle import GenParams, decompress, gen_grammar


def test_example_slices(example_grammar, example_text):
    g = example_grammar
    assert extract(g, g.start, 21, 21) == "t"
    assert extract(g, g.start, 1, 4) == "cgta"
    assert extract(g, g.start, 1, g.n) == example_text
    assert extract(g, "X7", 5, 12) == "cgtacgta"


def test_out_of_range(example_grammar):
    g = example_grammar
    for i, j in [(0, 3), (5, 4), (1, g.n + 1)]:
        with pytest.raises(OutOfRange):
            extract(g, g.start, i, j)


def test_every_slice_of_small_grammars():
    for seed in range(15):
        g = gen_grammar(seed, GenParams(max_n=120))
        text = decompress(g)
        for i in range(1, g.n + 1):
            for j in range(i, g.n + 1):
                assert extract(g, g.start, i, j) == text[i - 1 : j]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_random_slices(seed, data):
    g = gen_grammar(seed, GenParams(max_n=5000, alphabet="abc"))
    text = decompress(g)
    i = data.draw(st.integers(1, g.n))
    j = data.draw(st.integers(i, g.n))
    assert extract(g, g.start, i, j) == text[i - 1 : j]
    assert g.access.char_at(g.start, i) == text[i - 1]


def test_prefix_and_reversed_suffix_caches():
    g = gen_grammar(11, GenParams(max_n=5000))
    acc = g.access
    rng = random.Random(0)
    for x in range(1, len(g.rules)):
        full = g.expand(x)
        for _ in range(5):
            k = rng.randint(0, len(full))
            assert acc.prefix(x, k) == full[:k]
            assert acc.rsuffix(x, k) == full[::-1][:k]


def test_coordinate_strings(example_grammar):
    g = example_grammar
    x1 = g.symbol("X1")
    assert XRef(x1).head(g, 10) == "atgc"
    assert symbol_at_x(g, XRef(x1), 1) == "a"
    y = YPower(x1, 3)
    assert y.length(g) == 12
    assert y.head(g, 6) == "cgtacg"
    assert symbol_at_y(g, y, 5) == "c"
    s_rule = g.start
    ys = YSuffix(s_rule, 2)  # 't' X7 X8 X9 X11
    assert ys.head(g, 5) == "tcgta"
    assert symbol_at_y(g, ys, 1) == "t"
    with pytest.raises(OutOfRange):
        symbol_at_y(g, y, 13)


def test_compare_lazy_orders_like_strings():
    g = parse_grammar("S -> A B C 'c' 'g'\nA -> 'c' 'g' 't' 'a'\nB -> 'c' 'g'\nC -> A ^ 40\n")
    refs = [XRef(g.symbol(n)) for n in ("A", "B", "C")] + [YPower(g.symbol("A"), 39), YPower(g.symbol("A"), 40)]
    strings = [r.head(g, 10**6) for r in refs]
    for a, sa in zip(refs, strings):
        for b, sb in zip(refs, strings):
            assert compare_lazy(g, a, b) == (sa > sb) - (sa < sb)
    # rev("cgta") = "atgc" ranks before rev("cg") = "gc"
    assert compare_lazy(g, XRef(g.symbol("A")), XRef(g.symbol("B"))) == -1
