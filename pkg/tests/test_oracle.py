import pytest

from rlindex.errors import ParamError, TooLarge
from rlindex.grammar import format_grammar, parse_grammar, validate
from rlindex.index import transform_rule
from rlindex.oracle import (
    GenParams,
    decompress,
    gen_grammar,
    gen_grammar_text,
    gen_patterns,
    gen_power_family,
    naive_count,
    naive_locate,
    naive_mems,
)
from rlindex.periods import shortest_period


def test_naive_scans(example_text):
    assert naive_count(example_text, "acgtacgtac") == 25
    assert naive_count(example_text, example_text) == 1
    assert naive_count(example_text, "x") == 0
    assert naive_locate("aaaa", "aa") == [1, 2, 3]
    with pytest.raises(ValueError):
        naive_locate("abc", "")


def test_naive_mems_small():
    assert naive_mems("abcab", "cabx", 1) == [(1, 3)]
    assert naive_mems("abab", "ab", 2) == [(1, 2)]
    assert naive_mems("abab", "ab", 3) == []


def test_decompress_limit(example_grammar):
    assert len(decompress(example_grammar)) == 146
    with pytest.raises(TooLarge):
        decompress(example_grammar, limit=100)


def test_generator_is_deterministic():
    assert gen_grammar_text(42) == gen_grammar_text(42)
    assert gen_grammar_text(42) != gen_grammar_text(43)


def test_generated_grammars_are_valid_and_bounded():
    for seed in range(1000):
        params = GenParams(max_n=300 + seed)
        g = gen_grammar(seed, params)
        assert validate(g) == []
        assert 1 <= g.n <= params.max_n


def test_bias_zero_gives_plain_cfg():
    for seed in range(100):
        assert gen_grammar(seed, GenParams(run_length_bias=0.0)).run_rules() == []


def test_nested_runs_are_common():
    nested = 0
    for seed in range(300):
        g = gen_grammar(seed)
        nested += any(transform_rule(g, r.head).beta >= 2 for r in g.run_rules())
    assert nested >= 150


@pytest.mark.parametrize(
    "params",
    [
        GenParams(max_rules=0),
        GenParams(alphabet=""),
        GenParams(alphabet="aa"),
        GenParams(alphabet="Ā"),
        GenParams(run_length_bias=1.5),
        GenParams(max_n=0),
        GenParams(max_exponent=1),
    ],
)
def test_bad_params(params):
    with pytest.raises(ParamError):
        gen_grammar(0, params)


def test_patterns(example_grammar, example_text):
    a = gen_patterns(example_text, 1, 40, 20, example_grammar)
    assert a == gen_patterns(example_text, 1, 40, 20, example_grammar)
    assert len(a) == 40
    assert all(1 <= len(p) <= 20 for p in a)
    assert any(len(p) >= 3 and 2 * shortest_period(p) < len(p) for p in a)
    for seed in range(50):
        batch = gen_patterns(example_text, seed, 3, 10)
        assert any(2 * shortest_period(p) < len(p) for p in batch)
    with pytest.raises(ParamError):
        gen_patterns("", 0, 1, 5)


def test_power_family():
    g = gen_power_family()
    assert g.n == 10**6
    assert g.g_rl <= 200
    assert len(g.run_rules()) >= 5
    again = parse_grammar(format_grammar(g))
    assert again.n == g.n
    small = gen_power_family(1234, seed=3)
    assert len(decompress(small)) == 1234
    with pytest.raises(ParamError):
        gen_power_family(0)
