"""Shortest periods, border arrays and Karp-Rabin signatures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .errors import EmptyString, OutOfRange

MERSENNE61 = (1 << 61) - 1


def border_array(s: str) -> list[int]:
    """b[i] = length of the longest proper border of s[:i+1] (KMP failure function)."""
    b = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = b[k - 1]
        if s[i] == s[k]:
            k += 1
        b[i] = k
    return b


def shortest_period(s: str) -> int:
    if not s:
        raise EmptyString("the empty string has no period")
    return len(s) - border_array(s)[-1]


def is_period(s: str, p: int) -> bool:
    if not 1 <= p <= len(s):
        raise OutOfRange(f"period {p} outside [1, {len(s)}]")
    return s[: len(s) - p] == s[p:]


def periods(s: str, border: list[int] | None = None) -> list[int]:
    """All periods of s in increasing order, read off the border chain."""
    if not s:
        raise EmptyString("the empty string has no period")
    b = border if border is not None else border_array(s)
    out = []
    k = b[-1]
    while k:
        out.append(len(s) - k)
        k = b[k - 1]
    out.append(len(s))
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root_length(s: str) -> int:
    """Length of the shortest u with s = u^k.

    Equals the shortest period of s+s, which is the quantity the counting
    structure needs, but only costs a few C-level comparisons per prime
    factor of len(s).
    """
    if not s:
        raise EmptyString("the empty string has no root")
    d = len(s)
    for r in _prime_factors(d):
        while d % r == 0 and s == s[: d // r] * (len(s) * r // d):
            d //= r
    return d


def period_of_power(g, base: int | str, s: int) -> int:
    """p(exp(B)^s) for s >= 2; always divides |B|."""
    if s < 2:
        raise OutOfRange(f"run-length exponent {s} < 2")
    return primitive_root_length(g.expand(base))


def fine_wilf_holds(s: str, p: int, q: int) -> bool:
    """Periodicity lemma check: if p, q are periods and p+q <= |s|+gcd, so is gcd."""
    if not (is_period(s, p) and is_period(s, q)):
        return True
    if p + q > len(s) + gcd(p, q):
        return True
    return is_period(s, gcd(p, q))


def code(ch: str) -> int:
    """Symbol code used by signatures; never zero, so padding cannot collide."""
    return ord(ch) + 1


@dataclass(frozen=True)
class SignatureScheme:
    """kappa(S) = sum code(S[i]) * base^(i-1) mod modulus."""

    base: int
    modulus: int = MERSENNE61

    @classmethod
    def from_seed(cls, seed: int, attempt: int = 0) -> SignatureScheme:
        rng = random.Random(f"rlindex-kr-{seed}-{attempt}")
        return cls(rng.randrange(1, MERSENNE61))

    def sig(self, s: str) -> int:
        acc = 0
        for ch in reversed(s):
            acc = (acc * self.base + code(ch)) % self.modulus
        return acc

    def power(self, k: int) -> int:
        return pow(self.base, k, self.modulus)

    def concat(self, left: int, left_len: int, right: int) -> int:
        """kappa(S S') from kappa(S), |S| and kappa(S')."""
        return (left + self.power(left_len) * right) % self.modulus

    def geometric(self, r: int, k: int) -> int:
        """1 + r + ... + r^(k-1) mod modulus, by doubling (no inverses)."""
        mod = self.modulus

        def go(k: int) -> tuple[int, int]:
            if k == 0:
                return 0, 1
            if k & 1:
                total, rk = go(k - 1)
                return (1 + r * total) % mod, rk * r % mod
            total, rk = go(k >> 1)
            return total * (1 + rk) % mod, rk * rk % mod

        return go(k)[0]


class PrefixSignatures:
    """Prefix signatures of one string; any substring signature in O(1)."""

    def __init__(self, s: str, scheme: SignatureScheme):
        mod, c = scheme.modulus, scheme.base
        n = len(s)
        pre = [0] * (n + 1)
        pw = [1] * (n + 1)
        for i, ch in enumerate(s):
            pre[i + 1] = (pre[i] + code(ch) * pw[i]) % mod
            pw[i + 1] = pw[i] * c % mod
        inv_c = pow(c, mod - 2, mod)
        ipw = [1] * (n + 1)
        for i in range(n):
            ipw[i + 1] = ipw[i] * inv_c % mod
        self.scheme = scheme
        self.length = n
        self.prefix = pre
        self.powers = pw
        self._inv_powers = ipw

    def substring(self, i: int, j: int) -> int:
        """kappa(S[i..j]), 1-based inclusive; the empty range i = j+1 gives 0."""
        if not (1 <= i <= j + 1 and j <= self.length):
            raise OutOfRange(f"substring [{i}..{j}] outside [1..{self.length}]")
        mod = self.scheme.modulus
        return (self.prefix[j] - self.prefix[i - 1]) * self._inv_powers[i - 1] % mod


def prefix_signatures(s: str, scheme: SignatureScheme) -> PrefixSignatures:
    return PrefixSignatures(s, scheme)


def substring_sig(ps: PrefixSignatures, i: int, j: int) -> int:
    return ps.substring(i, j)
