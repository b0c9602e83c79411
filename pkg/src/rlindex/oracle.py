"""Reference implementations and random instances for cross-checking.

Everything here is deliberately simple: full decompression, quadratic
scans and brute force.  The generators favour the awkward inputs for the
index, i.e. periodic expansions and run-length rules nested so that the
primitive root of exp(A) is shorter than exp(B).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ParamError, TooLarge
from .grammar import Grammar, parse_grammar
from .periods import shortest_period

DEFAULT_LIMIT = 1 << 24


def decompress(g: Grammar, limit: int = DEFAULT_LIMIT) -> str:
    if g.n > limit:
        raise TooLarge(f"text length {g.n} exceeds the decompression limit {limit}")
    return g.expand(g.start)


def naive_locate(text: str, pattern: str) -> list[int]:
    """1-based start positions of every (possibly overlapping) occurrence."""
    if not pattern:
        raise ValueError("empty pattern")
    out = []
    i = text.find(pattern)
    while i >= 0:
        out.append(i + 1)
        i = text.find(pattern, i + 1)
    return out


def naive_count(text: str, pattern: str) -> int:
    return len(naive_locate(text, pattern))


def naive_mems(text: str, pattern: str, k: int) -> list[tuple[int, int]]:
    """k-MEMs by counting all O(m^2) substrings."""
    m = len(pattern)
    ok = [[False] * (m + 2) for _ in range(m + 2)]
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            ok[i][j] = naive_count(text, pattern[i - 1 : j]) >= k
            if not ok[i][j]:
                break
    return [
        (i, j)
        for i in range(1, m + 1)
        for j in range(i, m + 1)
        if ok[i][j] and not ok[i - 1][j] and not ok[i][j + 1]
    ]


@dataclass
class GenParams:
    max_rules: int = 12
    alphabet: str = "ab"
    run_length_bias: float = 0.4
    max_n: int = 5000
    max_exponent: int = 6

    def check(self) -> None:
        if self.max_rules < 1:
            raise ParamError("max_rules must be at least 1")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ParamError("alphabet must be non-empty without repeats")
        if any(ord(ch) > 255 for ch in self.alphabet):
            raise ParamError("alphabet characters must be below 256")
        if not 0.0 <= self.run_length_bias <= 1.0:
            raise ParamError("run_length_bias must lie in [0, 1]")
        if self.max_n < 1:
            raise ParamError("max_n must be positive")
        if self.max_exponent < 2:
            raise ParamError("max_exponent must be at least 2")


def _quote(ch: str) -> str:
    if ch.isprintable() and ch not in "'\\ ":
        return f"'{ch}'"
    return "'\\x%02x'" % ord(ch)


def gen_grammar_text(seed: int, params: GenParams | None = None) -> str:
    """Random grammar in the text format; see ``gen_grammar``."""
    params = params or GenParams()
    params.check()
    rng = random.Random(seed)
    budget = params.max_n
    terms = [_quote(ch) for ch in params.alphabet]
    symbols: list[tuple[str, int]] = [(t, 1) for t in terms]
    rules: dict[str, str] = {}
    runs: list[str] = []

    def pick(limit: int, recent_bias: float = 0.6) -> tuple[str, int] | None:
        fits = [s for s in symbols if s[1] <= limit]
        if not fits:
            return None
        if len(fits) > 1 and rng.random() < recent_bias:
            return rng.choice(fits[-3:])
        return rng.choice(fits)

    for i in range(1, params.max_rules + 1):
        name = f"X{i}"
        roll = rng.random()
        if roll < params.run_length_bias:
            limit = budget // 2
            # nesting: prefer bases that are themselves periodic
            pool = [s for s in symbols if s[0] in runs and s[1] <= limit]
            base = rng.choice(pool) if pool and rng.random() < 0.5 else pick(limit)
            if base is None:
                continue
            top = min(params.max_exponent, budget // base[1])
            s = rng.randint(2, top)
            rules[name] = f"{base[0]} ^ {s}"
            runs.append(name)
            symbols.append((name, base[1] * s))
            continue
        width = rng.randint(2, 4)
        body: list[tuple[str, int]] = []
        room = budget
        if rng.random() < 0.3:
            # square-like bodies X X or X Y X make exp(A) periodic
            first = pick(budget // 2)
            if first is None:
                continue
            body = [first, first]
            if rng.random() < 0.5 and first[1] * 3 <= budget:
                body.append(first)
            room -= sum(b[1] for b in body)
        else:
            for _ in range(width):
                got = pick(room)
                if got is None:
                    break
                body.append(got)
                room -= got[1]
        if len(body) < 2:
            continue
        rules[name] = " ".join(b[0] for b in body)
        symbols.append((name, sum(b[1] for b in body)))

    room = budget
    top: list[str] = []
    for _ in range(rng.randint(1, 4)):
        got = pick(room, 0.8)
        if got is None:
            break
        top.append(got[0])
        room -= got[1]
    if len(top) == 1 and room >= 1:
        top.append(rng.choice(terms))

    # keep only what the start rule reaches, in definition order
    reach: set[str] = set()
    stack = [t for t in top if t in rules]
    while stack:
        x = stack.pop()
        if x in reach:
            continue
        reach.add(x)
        stack.extend(tok for tok in rules[x].split() if tok in rules)
    lines = ["start S", "S -> " + " ".join(top)]
    lines += [f"{name} -> {body}" for name, body in rules.items() if name in reach]
    return "\n".join(lines) + "\n"


def gen_grammar(seed: int, params: GenParams | None = None) -> Grammar:
    """Deterministic random RLCFG with n <= params.max_n."""
    return parse_grammar(gen_grammar_text(seed, params))


def gen_patterns(
    text: str, seed: int, count: int, max_len: int, grammar: Grammar | None = None
) -> list[str]:
    """Patterns mixing substrings, one-off mutations, powers and random strings.

    Whenever ``max_len >= 3`` and ``count >= 1`` the batch contains at least
    one pattern with p(P) < m/2.
    """
    if count < 0 or max_len < 1 or not text:
        raise ParamError("need count >= 0, max_len >= 1 and a non-empty text")
    rng = random.Random(seed)
    alphabet = sorted(set(text))
    roots = []
    if grammar is not None:
        roots = [grammar.access.prefix(r.base, min(grammar.lengths[r.base], max_len)) for r in grammar.run_rules()]

    def substring() -> str:
        m = rng.randint(1, min(max_len, len(text)))
        i = rng.randrange(len(text) - m + 1)
        return text[i : i + m]

    def power() -> str:
        if roots and rng.random() < 0.7:
            root = rng.choice(roots)
        else:
            root = substring()
        root = root[: rng.randint(1, min(len(root), max(1, max_len // 2)))]
        m = rng.randint(min(max_len, 2 * len(root) + 1), max_len)
        return (root * (m // len(root) + 1))[:m]

    def mutated() -> str:
        s = list(substring())
        s[rng.randrange(len(s))] = rng.choice(alphabet + ["#"])
        return "".join(s)

    def noise() -> str:
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))

    makers = [substring, substring, mutated, power, power, noise]
    out = [rng.choice(makers)() for _ in range(count)]
    if count and max_len >= 3 and not any(len(p) >= 3 and 2 * shortest_period(p) < len(p) for p in out):
        root = text[rng.randrange(len(text))]
        out[-1] = root * rng.randint(3, max_len)
    return out


def gen_power_family(n: int = 10**6, seed: int = 0, alphabet: str = "acgt") -> Grammar:
    """Nested powers with a little variation per level, expanding to exactly n."""
    if n < 1:
        raise ParamError("n must be positive")
    rng = random.Random(seed)
    terms = [_quote(ch) for ch in alphabet]
    lines = ["X0 -> " + " ".join(terms)]
    lengths = {"X0": len(terms)}
    level = 0
    while lengths[f"X{level}"] * 5 < n:
        prev = f"X{level}"
        level += 1
        lines.append(f"R{level} -> {prev} ^ {rng.randint(3, 5)}")
        lengths[f"R{level}"] = lengths[prev] * int(lines[-1].rsplit(" ", 1)[1])
        spacer = rng.sample(terms, 2)
        lines.append(f"X{level} -> R{level} {' '.join(spacer)} {prev}")
        lengths[f"X{level}"] = lengths[f"R{level}"] + 2 + lengths[prev]

    body = []
    rest = n
    extra = 0
    for name in sorted(lengths, key=lengths.get, reverse=True):
        k = rest // lengths[name]
        if k >= 2:
            extra += 1
            lines.append(f"P{extra} -> {name} ^ {k}")
            body.append(f"P{extra}")
        elif k == 1:
            body.append(name)
        rest -= k * lengths[name]
    if rest:
        body.extend(terms[0] for _ in range(rest))
    text = "start S\nS -> " + " ".join(body) + "\n" + "\n".join(lines) + "\n"
    g = parse_grammar(text)
    assert g.n == n
    return g
