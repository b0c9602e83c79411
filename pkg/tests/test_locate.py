import pytest

from rlindex.errors import OutOfRange
from rlindex.index import build_index
from rlindex.locate import extract_text, locate, locate_unsorted, primary_occurrences
from rlindex.oracle import GenParams, decompress, gen_grammar, gen_patterns, naive_locate


def test_example_positions(example_index, example_text):
    got = locate(example_index, "acgtacgtac")
    assert got == naive_locate(example_text, "acgtacgtac")
    assert len(got) == 25
    assert got[0] == 4 and got[-1] == 134


def test_example_single_letter(example_index, example_text):
    got = locate(example_index, "t")
    assert got[:3] == [3, 7, 11]
    assert 21 in got
    assert len(got) == example_index.occ.occ1["t"] == example_text.count("t")


def test_absent_pattern(example_index):
    assert locate(example_index, "tt") == []
    assert locate(example_index, "xyz") == []


def test_extract_text(example_index, example_text):
    assert extract_text(example_index, 21, 21) == "t"
    assert extract_text(example_index, 1, 4) == "cgta"
    assert extract_text(example_index, 1, example_index.n) == example_text
    with pytest.raises(OutOfRange):
        extract_text(example_index, 0, 2)
    with pytest.raises(OutOfRange):
        extract_text(example_index, 3, 2)


def test_primary_offsets_point_into_locus(example_index):
    g = example_index.grammar
    for locus, off in primary_occurrences(example_index, "acgtacgtac"):
        assert g.expand(locus)[off : off + 10] == "acgtacgtac"


def test_no_duplicates_before_dedup_and_self_verification():
    for seed in range(80):
        g = gen_grammar(seed, GenParams(alphabet="abc"))
        idx = build_index(g)
        text = decompress(g)
        for pat in gen_patterns(text, seed, 20, 40, g):
            raw = locate_unsorted(idx, pat)
            assert len(raw) == len(set(raw))
            assert sorted(raw) == naive_locate(text, pat)
            for p0 in raw[:5]:
                assert extract_text(idx, p0, p0 + len(pat) - 1) == pat
