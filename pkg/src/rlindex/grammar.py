"""Run-length context-free grammars: parsing, validation and derived data.

Symbols are small integers.  Terminals occupy ``1..sigma`` (ordered by
character), nonterminals follow in topological order, so every rule body
only mentions ids smaller than its head.  Characters are ``str`` of length
one with code points below 256; texts are plain ``str``.
"""

from __future__ import annotations

import codecs
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    CycleDetected,
    DuplicateRule,
    EmptyBody,
    ExponentTooSmall,
    GrammarError,
    ParseError,
    UndefinedSymbol,
)

TERMINAL = "t"
NONTERMINAL = "n"

_TOKEN = re.compile(r"'(?:[^'\\]|\\.)+'|->|\^|[^\s'^]+")


@dataclass(frozen=True)
class Rule:
    head: int
    body: tuple[int, ...]
    exponent: int = 1

    @property
    def is_run(self) -> bool:
        return self.exponent > 1

    @property
    def base(self) -> int:
        return self.body[0]


@dataclass
class RawRule:
    head: str
    items: list[tuple[str, str]]
    exponent: int | None = None
    line: int | None = None


@dataclass
class RawGrammar:
    """Grammar source split into rules, before any checking."""

    rules: list[RawRule] = field(default_factory=list)
    start: str | None = None

    @property
    def start_name(self) -> str | None:
        if self.start is not None:
            return self.start
        return self.rules[0].head if self.rules else None


def _terminal(token: str, line: int) -> str:
    inner = token[1:-1]
    try:
        ch = codecs.decode(inner, "unicode_escape") if "\\" in inner else inner
    except UnicodeDecodeError as exc:
        raise ParseError(f"bad escape in terminal {token}", line) from exc
    if len(ch) != 1 or ord(ch) > 255:
        raise ParseError(f"terminal {token} must be a single byte-sized character", line)
    return ch


def read_grammar(source: str) -> RawGrammar:
    """Tokenize grammar text into a RawGrammar; only syntax is checked here."""
    raw = RawGrammar()
    for lineno, line in enumerate(source.splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = _TOKEN.findall(text)
        if tokens[0] == "start":
            if len(tokens) != 2 or tokens[1].startswith("'"):
                raise ParseError("expected 'start NAME'", lineno)
            if raw.start is not None:
                raise ParseError("start declared twice", lineno)
            raw.start = tokens[1]
            continue
        if len(tokens) < 2 or tokens[1] != "->" or tokens[0].startswith("'"):
            raise ParseError(f"expected 'NAME -> ...', got {text!r}", lineno)
        head, rest = tokens[0], tokens[2:]
        exponent = None
        if "^" in rest:
            if len(rest) != 3 or rest[1] != "^":
                raise ParseError("run-length rules have the form 'NAME -> BASE ^ INT'", lineno)
            try:
                exponent = int(rest[2])
            except ValueError:
                raise ParseError(f"bad exponent {rest[2]!r}", lineno) from None
            rest = rest[:1]
        items = []
        for tok in rest:
            if tok.startswith("'"):
                items.append((TERMINAL, _terminal(tok, lineno)))
            elif tok in ("->", "^"):
                raise ParseError(f"unexpected {tok!r}", lineno)
            else:
                items.append((NONTERMINAL, tok))
        raw.rules.append(RawRule(head, items, exponent, lineno))
    return raw


def _raw_violations(raw: RawGrammar) -> list[GrammarError]:
    errors: list[GrammarError] = []
    defined: dict[str, RawRule] = {}
    heads = {r.head for r in raw.rules}
    for rule in raw.rules:
        if rule.head in defined:
            errors.append(DuplicateRule(f"second rule for {rule.head}", rule.line))
            continue
        defined[rule.head] = rule
        if not rule.items:
            errors.append(EmptyBody(f"rule {rule.head} has an empty body", rule.line))
        if rule.exponent is not None and rule.exponent < 2:
            errors.append(
                ExponentTooSmall(f"rule {rule.head} has exponent {rule.exponent} < 2", rule.line)
            )
        for kind, name in rule.items:
            if kind == NONTERMINAL and name not in heads:
                errors.append(UndefinedSymbol(f"{name} used in {rule.head} is not defined", rule.line))
    start = raw.start_name
    if start is None:
        errors.append(EmptyBody("grammar has no rules"))
    elif start not in defined:
        errors.append(UndefinedSymbol(f"start symbol {start} is not defined"))

    # iterative three-colour DFS
    colour: dict[str, int] = {}
    for root in defined:
        if colour.get(root):
            continue
        stack = [(root, iter(defined[root].items))]
        colour[root] = 1
        while stack:
            name, it = stack[-1]
            for kind, child in it:
                if kind != NONTERMINAL or child not in defined:
                    continue
                state = colour.get(child, 0)
                if state == 1:
                    errors.append(
                        CycleDetected(f"{child} derives itself (via {name})", defined[name].line)
                    )
                elif state == 0:
                    colour[child] = 1
                    stack.append((child, iter(defined[child].items)))
                    break
            else:
                colour[name] = 2
                stack.pop()
    return errors


def validate(g: RawGrammar | Grammar) -> list[GrammarError]:
    """List every violation found; an empty list means the grammar is sound."""
    if isinstance(g, RawGrammar):
        return _raw_violations(g)
    errors: list[GrammarError] = []
    if g.start <= g.sigma or g.rules[g.start] is None:
        errors.append(UndefinedSymbol("start is not a nonterminal"))
    for x in range(g.sigma + 1, len(g.rules)):
        rule = g.rules[x]
        if rule is None:
            errors.append(UndefinedSymbol(f"nonterminal {x} has no rule"))
            continue
        name = g.names[x]
        if not rule.body:
            errors.append(EmptyBody(f"rule {name} has an empty body"))
            continue
        if any(not 1 <= y < len(g.rules) for y in rule.body):
            errors.append(UndefinedSymbol(f"rule {name} references an unknown id"))
            continue
        if any(y >= x for y in rule.body):
            errors.append(CycleDetected(f"rule {name} is not in topological order"))
        if rule.is_run and len(rule.body) != 1:
            errors.append(GrammarError(f"run-length rule {name} must have a single base"))
        if rule.exponent < 1 or (rule.is_run and rule.exponent < 2):
            errors.append(ExponentTooSmall(f"rule {name} has exponent {rule.exponent}"))
        expected = (
            rule.exponent * g.lengths[rule.base] if rule.is_run else sum(g.lengths[y] for y in rule.body)
        )
        if g.lengths[x] != expected or expected < 1:
            errors.append(GrammarError(f"length of {name} is {g.lengths[x]}, expected {expected}"))
    return errors


class Grammar:
    """An immutable RLCFG producing exactly one text."""

    def __init__(self, chars: list[str], rules: list[Rule | None], names: list[str], start: int):
        self.chars = chars
        self.sigma = len(chars)
        self.rules = rules
        self.names = names
        self.start = start
        self.code = {ch: i + 1 for i, ch in enumerate(chars)}
        self._by_name = {name: i for i, name in enumerate(names) if i > self.sigma}
        lengths = [0] * len(rules)
        for x in range(1, len(rules)):
            rule = rules[x]
            if rule is None:
                lengths[x] = 1
            elif rule.is_run:
                lengths[x] = rule.exponent * lengths[rule.base]
            else:
                lengths[x] = sum(lengths[y] for y in rule.body)
        self.lengths = lengths

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self.lengths[self.start]

    @property
    def g_rl(self) -> int:
        """Grammar size: body lengths, with each run-length rule costing 2."""
        return sum(2 if r.is_run else len(r.body) for r in self.nonterminal_rules())

    @property
    def num_symbols(self) -> int:
        return len(self.rules) - 1

    def nonterminal_rules(self) -> list[Rule]:
        return [r for r in self.rules[self.sigma + 1 :] if r is not None]

    def run_rules(self) -> list[Rule]:
        return [r for r in self.nonterminal_rules() if r.is_run]

    def is_terminal(self, x: int) -> bool:
        return 1 <= x <= self.sigma

    def symbol(self, ref: int | str) -> int:
        """Resolve a symbol id, nonterminal name or single terminal character."""
        if isinstance(ref, int):
            if not 1 <= ref < len(self.rules):
                raise UndefinedSymbol(f"no symbol with id {ref}")
            return ref
        if ref in self._by_name:
            return self._by_name[ref]
        if len(ref) == 3 and ref[0] == ref[2] == "'" and ref[1] in self.code:
            return self.code[ref[1]]
        if len(ref) == 1 and ref in self.code:
            return self.code[ref]
        raise UndefinedSymbol(f"unknown symbol {ref!r}")

    def length(self, ref: int | str) -> int:
        return self.lengths[self.symbol(ref)]

    def expand(self, ref: int | str) -> str:
        """Materialize exp(X); meant for small symbols and for oracles."""
        x = self.symbol(ref)
        memo: dict[int, str] = {}

        def go(y: int) -> str:
            if y <= self.sigma:
                return self.chars[y - 1]
            if y in memo:
                return memo[y]
            rule = self.rules[y]
            if rule.is_run:
                out = go(rule.base) * rule.exponent
            else:
                out = "".join(go(z) for z in rule.body)
            memo[y] = out
            return out

        return go(x)

    @cached_property
    def access(self):
        """Random-access helper with prefix/suffix caches (see extraction)."""
        from .extraction import Expander

        return Expander(self)

    def __repr__(self) -> str:
        return f"Grammar(n={self.n}, sigma={self.sigma}, rules={len(self.nonterminal_rules())}, g_rl={self.g_rl})"


def build_grammar(raw: RawGrammar) -> Grammar:
    """Turn a checked RawGrammar into a Grammar, inlining unary non-start rules."""
    errors = _raw_violations(raw)
    if errors:
        raise errors[0]
    defined = {r.head: r for r in raw.rules}
    start_name = raw.start_name
    chars = sorted({v for r in raw.rules for k, v in r.items if k == TERMINAL})
    code = {ch: i + 1 for i, ch in enumerate(chars)}
    sigma = len(chars)

    def alias(name: str) -> tuple[str, str]:
        # follow chains of unary sequence rules down to a real symbol
        item = (NONTERMINAL, name)
        while item[0] == NONTERMINAL and item[1] != start_name:
            rule = defined[item[1]]
            if rule.exponent is not None or len(rule.items) != 1:
                break
            item = rule.items[0]
        return item

    order: list[str] = []
    seen: set[str] = set()

    def visit(root: str) -> None:
        stack = [(root, iter(defined[root].items))]
        seen.add(root)
        while stack:
            name, it = stack[-1]
            for item in it:
                kind, child = alias(item[1]) if item[0] == NONTERMINAL else item
                if kind == NONTERMINAL and child not in seen:
                    seen.add(child)
                    stack.append((child, iter(defined[child].items)))
                    break
            else:
                order.append(name)
                stack.pop()

    for rule in raw.rules:
        if rule.head in seen:
            continue
        if rule.head != start_name and alias(rule.head) != (NONTERMINAL, rule.head):
            continue
        visit(rule.head)

    ids = {name: sigma + 1 + i for i, name in enumerate(order)}

    def resolve(item: tuple[str, str]) -> int:
        kind, value = alias(item[1]) if item[0] == NONTERMINAL else item
        return code[value] if kind == TERMINAL else ids[value]

    rules: list[Rule | None] = [None] * (sigma + 1 + len(order))
    names = [""] + [repr(ch) for ch in chars] + order
    for name in order:
        r = defined[name]
        rules[ids[name]] = Rule(ids[name], tuple(resolve(i) for i in r.items), r.exponent or 1)
    return Grammar(chars, rules, names, ids[start_name])


def parse_grammar(source: str) -> Grammar:
    """Parse grammar text, raising the first violation found."""
    return build_grammar(read_grammar(source))


def format_grammar(g: Grammar) -> str:
    """Render a Grammar back into the text format (re-parses to the same grammar)."""

    def item(x: int) -> str:
        if g.is_terminal(x):
            ch = g.chars[x - 1]
            if ch.isprintable() and ch not in "'\\ ":
                return f"'{ch}'"
            return "'\\x%02x'" % ord(ch)
        return g.names[x]

    lines = [f"start {g.names[g.start]}"]
    for rule in g.nonterminal_rules():
        if rule.is_run:
            lines.append(f"{g.names[rule.head]} -> {item(rule.base)} ^ {rule.exponent}")
        else:
            lines.append(f"{g.names[rule.head]} -> " + " ".join(item(y) for y in rule.body))
    return "\n".join(lines) + "\n"


def expansion_length(g: Grammar, x: int | str) -> int:
    return g.length(x)


@dataclass(frozen=True)
class Mention:
    """X appears in the body of ``head``: at ``offset``, repeated ``repeat``
    times with ``stride`` (run-length mentions) or once (stride 0)."""

    head: int
    offset: int
    stride: int = 0
    repeat: int = 1


@dataclass
class OccurrenceModel:
    counts: list[int]
    mentions: list[list[Mention]]
    occ1: dict[str, int]

    def c(self, x: int) -> int:
        return self.counts[x]


def compute_occurrence_model(g: Grammar) -> OccurrenceModel:
    """Parse-tree multiplicities c(X) and mention lists, top-down by id."""
    mentions: list[list[Mention]] = [[] for _ in g.rules]
    for rule in g.nonterminal_rules():
        if rule.is_run:
            mentions[rule.base].append(Mention(rule.head, 0, g.lengths[rule.base], rule.exponent))
        else:
            off = 0
            for y in rule.body:
                mentions[y].append(Mention(rule.head, off))
                off += g.lengths[y]
    counts = [0] * len(g.rules)
    counts[g.start] = 1
    for x in range(len(g.rules) - 1, 0, -1):
        if x != g.start:
            counts[x] = sum(m.repeat * counts[m.head] for m in mentions[x])
    occ1 = {ch: counts[i + 1] for i, ch in enumerate(g.chars)}
    return OccurrenceModel(counts, mentions, occ1)


def grammar_tree_size(g: Grammar) -> int:
    """Node count of the grammar tree, run-length rules drawn as B and B^[s-1]."""
    seen = {g.start}
    stack = [g.start]
    nodes = 1
    while stack:
        rule = g.rules[stack.pop()]
        children = rule.body[:1] if rule.is_run else rule.body
        nodes += len(children) + (1 if rule.is_run else 0)
        for y in children:
            if not g.is_terminal(y) and y not in seen:
                seen.add(y)
                stack.append(y)
    return nodes
