import pytest

from rlindex.errors import (
    CycleDetected,
    DuplicateRule,
    EmptyBody,
    ExponentTooSmall,
    ParseError,
    UndefinedSymbol,
)
from rlindex.grammar import (
    compute_occurrence_model,
    expansion_length,
    format_grammar,
    grammar_tree_size,
    parse_grammar,
    read_grammar,
    validate,
)
from rlindex.oracle import decompress, gen_grammar, naive_count


def test_example_sizes(example_grammar):
    g = example_grammar
    assert g.n == 146
    assert g.sigma == 4
    assert g.chars == ["a", "c", "g", "t"]
    assert g.g_rl == 31
    assert len(g.run_rules()) == 5
    assert expansion_length(g, "X2") == 16
    assert expansion_length(g, "X11") == 80


def test_example_expansions(example_grammar):
    assert example_grammar.expand("X6") == "cgtacgta"
    assert example_grammar.expand("X9") == "ccccc"
    assert decompress(example_grammar).startswith("cgta" * 5 + "t")


def test_occurrence_counts_example(example_grammar):
    occ = compute_occurrence_model(example_grammar)
    c = {name: occ.c(example_grammar.symbol(name)) for name in ("S", "X1", "X2", "X3", "X6", "X7", "X10", "X11")}
    # X1: once in S, 4 per X2 (5 of them), once per X6 (4 of them)
    assert c == {"S": 1, "X1": 25, "X2": 5, "X3": 12, "X6": 4, "X7": 1, "X10": 4, "X11": 1}


def test_occ1_matches_scan(example_grammar, example_text):
    occ = compute_occurrence_model(example_grammar)
    assert sum(occ.occ1.values()) == example_grammar.n
    for ch, k in occ.occ1.items():
        assert k == naive_count(example_text, ch)


def test_occurrence_invariants_on_generated():
    for seed in range(30):
        g = gen_grammar(seed)
        occ = compute_occurrence_model(g)
        assert occ.counts[g.start] == 1
        text = decompress(g)
        for ch, k in occ.occ1.items():
            assert k == text.count(ch)


@pytest.mark.parametrize(
    "source, error",
    [
        ("S -> 'b'\nS -> 'a'", DuplicateRule),
        ("S -> A", UndefinedSymbol),
        ("S -> A 'b'\nA -> S", CycleDetected),
        ("S -> 'a' ^ 1", ExponentTooSmall),
        ("S ->", EmptyBody),
        ("S -> 'ab'", ParseError),
        ("S 'a'", ParseError),
        ("S -> 'a' ^ x", ParseError),
        ("start S\nX -> 'a'", UndefinedSymbol),
    ],
)
def test_parse_errors(source, error):
    with pytest.raises(error):
        parse_grammar(source)


def test_error_reports_line():
    with pytest.raises(UndefinedSymbol) as info:
        parse_grammar("S -> A B\nA -> 'a'\n")
    assert info.value.line == 1


def test_validate_lists_every_problem():
    raw = read_grammar("S -> A Z\nA -> 'a' ^ 1\nA -> 'b'\n")
    kinds = {type(e) for e in validate(raw)}
    assert kinds == {UndefinedSymbol, ExponentTooSmall, DuplicateRule}


def test_validate_accepts_built_grammars(example_grammar):
    assert validate(example_grammar) == []
    for seed in range(50):
        assert validate(gen_grammar(seed)) == []


def test_trivial_grammars():
    assert decompress(parse_grammar("S -> 'a'")) == "a"
    assert decompress(parse_grammar("S -> 'c' ^ 5")) == "ccccc"


def test_unary_rules_are_inlined():
    g = parse_grammar("S -> A A 'x'\nA -> B\nB -> 'a' 'b'\n")
    assert decompress(g) == "ababx"
    assert len(g.nonterminal_rules()) == 2  # A disappears, B stays


def test_escaped_terminals_round_trip():
    g = parse_grammar("S -> '\\x00' '\\'' ' ' '\\xff'\n")
    assert decompress(g) == "\x00' \xff"
    again = parse_grammar(format_grammar(g))
    assert decompress(again) == decompress(g)


def test_format_round_trip_on_generated():
    for seed in range(40):
        g = gen_grammar(seed)
        g2 = parse_grammar(format_grammar(g))
        assert decompress(g2) == decompress(g)
        assert g2.g_rl == g.g_rl


def test_comments_and_start_line():
    g = parse_grammar("# demo\nstart T\nA -> 'a' 'b'\nT -> A ^ 3\n")
    assert decompress(g) == "ababab"
    assert g.names[g.start] == "T"


def test_grammar_tree_size(example_grammar):
    # one internal node per distinct nonterminal; run rules have two children
    assert grammar_tree_size(example_grammar) > len(example_grammar.nonterminal_rules())
