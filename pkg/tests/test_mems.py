import random

import pytest

from rlindex.count import count
from rlindex.index import build_index
from rlindex.mems import k_mems, k_mems_with_counts
from rlindex.oracle import decompress, gen_grammar, gen_patterns, naive_count, naive_mems

P = "acgtacgtac"


def test_example_k26(example_index, example_text):
    got = k_mems_with_counts(example_index, P, 26)
    # frozen from the brute-force enumeration
    assert got == [(1, 9, 27), (2, 10, 28)]
    assert [(i, j) for i, j, _ in got] == naive_mems(example_text, P, 26)
    for i, j, c in got:
        assert c == naive_count(example_text, P[i - 1 : j])


def test_whole_pattern_is_one_mem(example_index):
    assert k_mems(example_index, P, 1) == [(1, 10)]


def test_absent_symbol_splits_the_scan(example_index, example_text):
    pat = "cgtaxcgta"
    got = k_mems(example_index, pat, 1)
    assert got == [(1, 4), (6, 9)] == naive_mems(example_text, pat, 1)


def test_k_above_every_letter_count(example_index, example_text):
    k = max(example_text.count(ch) for ch in "acgt") + 1
    assert k_mems(example_index, P, k) == []


def test_bad_arguments(example_index):
    with pytest.raises(ValueError):
        k_mems(example_index, P, 0)
    with pytest.raises(ValueError):
        k_mems(example_index, "", 1)


def test_at_most_two_counts_per_character():
    rng = random.Random(5)
    for seed in range(20):
        g = gen_grammar(seed)
        idx = build_index(g)
        text = decompress(g)
        for pat in gen_patterns(text, seed, 5, 30, g):
            calls = []

            def counting(ix, p):
                calls.append(p)
                return count(ix, p)

            k = rng.randint(1, 20)
            got = k_mems_with_counts(idx, pat, k, counter=counting)
            assert len(calls) <= 2 * len(pat)
            assert [(i, j) for i, j, _ in got] == naive_mems(text, pat, k)
