"""Command-line entry point: ``rlindex <command> ...``.

Exit codes: 0 ok, 1 bad input, 2 I/O failure, 3 index format or version
problem, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .count import count
from .errors import GrammarError, IndexFormatError, OutOfRange, ParamError, RLIndexError, TooLarge
from .grammar import format_grammar, parse_grammar
from .index import Index, build_index
from .locate import extract_text, locate
from .mems import k_mems_with_counts
from .oracle import GenParams, decompress, gen_grammar, gen_patterns, gen_power_family, naive_locate
from .serial import deserialize_index, serialize_index

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_FORMAT, EXIT_MISMATCH = range(5)


class InputError(Exception):
    pass


class Mismatch(Exception):
    pass


def _read_grammar(path: str):
    return parse_grammar(Path(path).read_text(encoding="latin-1"))


def _load(args) -> Index:
    if args.index:
        return deserialize_index(Path(args.index).read_bytes())
    return build_index(_read_grammar(args.grammar), args.seed)


def _pattern(args) -> str:
    if args.pattern_file:
        raw = Path(args.pattern_file).read_bytes()
    else:
        raw = os.fsencode(args.pattern)
    if not raw:
        raise InputError("empty pattern")
    return raw.decode("latin-1")


def _stats_line(idx: Index) -> str:
    g = idx.grammar
    return (
        f"n={g.n} g_rl={g.g_rl} rules={len(g.nonterminal_rules())} "
        f"run_rules={len(g.run_rules())} points={len(idx.points)} h_keys={len(idx.periodic)}"
    )


def _spot_check(idx: Index, g, n_patterns: int, max_len: int, seed: int, out) -> None:
    """Compare count and locate with the oracle on exp(g); raises Mismatch on the first difference."""
    if n_patterns == 0:
        return
    text = decompress(g)
    for p in gen_patterns(text, seed, n_patterns, max_len, g):
        expected = naive_locate(text, p)
        got_count = count(idx, p)
        got = locate(idx, p)
        if got_count != len(expected) or got != expected:
            print("mismatch reproducer:", file=out)
            print(format_grammar(g), end="", file=out)
            print(f"pattern: {p!r}", file=out)
            print(f"expected count={len(expected)} positions={expected[:20]}", file=out)
            print(f"actual   count={got_count} positions={got[:20]}", file=out)
            raise Mismatch(p)


def cmd_build(args) -> int:
    g = _read_grammar(args.grammar)
    idx = build_index(g, args.seed)
    if args.check:
        _spot_check(idx, g, 100, 32, args.seed, sys.stderr)
    Path(args.output).write_bytes(serialize_index(idx))
    print(_stats_line(idx))
    return EXIT_OK


def cmd_count(args) -> int:
    print(count(_load(args), _pattern(args)))
    return EXIT_OK


def cmd_locate(args) -> int:
    positions = locate(_load(args), _pattern(args))
    sys.stdout.write("".join(f"{p}\n" for p in positions))
    return EXIT_OK


def cmd_extract(args) -> int:
    text = extract_text(_load(args), args.start, args.end)
    sys.stdout.buffer.write(text.encode("latin-1") + b"\n")
    sys.stdout.flush()
    return EXIT_OK


def cmd_mems(args) -> int:
    if args.k < 1:
        raise InputError("k must be at least 1")
    for i, j, c in k_mems_with_counts(_load(args), _pattern(args), args.k):
        print(i, j, c)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_grammar(args.grammar)
    idx = deserialize_index(Path(args.index).read_bytes()) if args.index else build_index(g, args.seed)
    _spot_check(idx, g, args.patterns, args.max_len, args.seed, sys.stdout)
    print(f"ok: {args.patterns} patterns matched")
    return EXIT_OK


def cmd_stats(args) -> int:
    for key, value in _load(args).stats().items():
        print(f"{key} = {value}")
    return EXIT_OK


def cmd_gen(args) -> int:
    params = GenParams(args.max_rules, args.alphabet, args.run_length_bias, args.max_n, args.max_exponent)
    text = format_grammar(gen_grammar(args.seed, params))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="latin-1")
    return EXIT_OK


def cmd_bench(args) -> int:
    from .report import loglog_slope, time_counts, write_report

    if args.index or args.grammar:
        idx = _load(args)
        title = Path(args.index or args.grammar).name
    else:
        idx = build_index(gen_power_family(args.n, args.seed), args.seed)
        title = f"power family, n={args.n}"
    rows = time_counts(idx, args.lengths, args.patterns, args.seed)
    tsv, png = write_report(rows, Path(args.output), title)
    sys.stdout.write(tsv.read_text())
    if len(rows) >= 2:
        print(f"slope\t{loglog_slope([r.m for r in rows], [r.median_ms for r in rows]):.3f}")
    print(f"wrote {tsv} {png}")
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-i", "--index", help="index file written by build")
    src.add_argument("-g", "--grammar", help="grammar file (index is built in memory)")
    p.add_argument("--seed", type=int, default=0)


def _add_pattern(p: argparse.ArgumentParser) -> None:
    pat = p.add_mutually_exclusive_group(required=True)
    pat.add_argument("-p", "--pattern", help="pattern given as a raw byte string")
    pat.add_argument("-P", "--pattern-file", help="read the pattern bytes from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlindex", description="Pattern counting and locating over run-length grammars.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an index from a grammar file")
    p.add_argument("-g", "--grammar", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true", help="spot-check 100 patterns against the oracle")
    p.set_defaults(func=cmd_build)

    for name, func, helptext in (
        ("count", cmd_count, "print the number of occurrences"),
        ("locate", cmd_locate, "print sorted 1-based positions"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_source(p)
        _add_pattern(p)
        p.set_defaults(func=func)

    p = sub.add_parser("extract", help="print T[start..end]")
    _add_source(p)
    p.add_argument("start", type=int)
    p.add_argument("end", type=int)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("mems", help="print 'i j count' for every k-MEM")
    _add_source(p)
    _add_pattern(p)
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_mems)

    p = sub.add_parser("verify", help="compare queries with the brute-force oracle")
    p.add_argument("-g", "--grammar", required=True)
    p.add_argument("-i", "--index", help="check this index instead of a fresh build")
    p.add_argument("--patterns", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print index size figures")
    _add_source(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a random grammar")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rules", type=int, default=12)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--run-length-bias", type=float, default=0.4)
    p.add_argument("--max-n", type=int, default=5000)
    p.add_argument("--max-exponent", type=int, default=6)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time count over pattern lengths; writes PREFIX.tsv and PREFIX.png")
    src = p.add_mutually_exclusive_group()
    src.add_argument("-i", "--index")
    src.add_argument("-g", "--grammar")
    p.add_argument("-n", type=int, default=10**6, help="text length of the generated family")
    p.add_argument("--lengths", type=int, nargs="+", default=[8, 16, 32, 64])
    p.add_argument("--patterns", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="bench")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Mismatch:
        return EXIT_MISMATCH
    except IndexFormatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except GrammarError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, OutOfRange, ParamError, TooLarge, RLIndexError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
