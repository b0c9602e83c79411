"""Binary index format.

Layout (all integers little-endian)::

    b"RLXI"  u16 version  u64 payload-length  payload  u32 crc32

The payload is a sequence of sections ``u8 tag, u64 length, body``; every
body is a flat array of signed 64-bit integers.  Strings are stored as a
length followed by one integer per byte.
"""

from __future__ import annotations

import struct
import zlib

from .errors import BadMagic, ChecksumMismatch, Truncated, VersionMismatch
from .extraction import XRef, YPower, YSuffix
from .grammar import Grammar, Mention, OccurrenceModel, Rule
from .grid import Grid, GridPoint
from .index import Index, MainPoint, PeriodicEntry
from .periods import SignatureScheme

MAGIC = b"RLXI"
VERSION = 1
_HEADER = struct.Struct("<4sHQ")
_CRC = struct.Struct("<I")

SEC_GRAMMAR, SEC_OCC, SEC_POINTS, SEC_RANKS, SEC_PERIODIC, SEC_SCHEME = range(1, 7)


class _Writer:
    def __init__(self):
        self.ints: list[int] = []

    def put(self, *values: int) -> None:
        self.ints.extend(values)

    def put_list(self, values) -> None:
        values = list(values)
        self.ints.append(len(values))
        self.ints.extend(values)

    def put_str(self, s: str) -> None:
        self.put_list(s.encode("utf-8"))

    def tobytes(self) -> bytes:
        return struct.pack(f"<{len(self.ints)}q", *self.ints)


class _Reader:
    def __init__(self, body: bytes):
        if len(body) % 8:
            raise Truncated("section length is not a multiple of 8")
        self.ints = struct.unpack(f"<{len(body) // 8}q", body)
        self.pos = 0

    def get(self) -> int:
        if self.pos >= len(self.ints):
            raise Truncated("section ended early")
        self.pos += 1
        return self.ints[self.pos - 1]

    def get_list(self) -> list[int]:
        n = self.get()
        if n < 0 or self.pos + n > len(self.ints):
            raise Truncated("list runs past the end of its section")
        out = list(self.ints[self.pos : self.pos + n])
        self.pos += n
        return out

    def get_str(self) -> str:
        return bytes(self.get_list()).decode("utf-8")


def _yref_fields(ref) -> tuple[int, int, int]:
    if isinstance(ref, YSuffix):
        return 0, ref.rule, ref.start
    return 1, ref.base, ref.count


def serialize_index(idx: Index) -> bytes:
    g = idx.grammar
    sections: list[tuple[int, _Writer]] = []

    w = _Writer()
    w.put_list(ord(ch) for ch in g.chars)
    w.put(g.start, len(g.rules))
    for x in range(g.sigma + 1, len(g.rules)):
        rule = g.rules[x]
        w.put_str(g.names[x])
        w.put(rule.exponent)
        w.put_list(rule.body)
    sections.append((SEC_GRAMMAR, w))

    w = _Writer()
    w.put_list(idx.occ.counts)
    sections.append((SEC_OCC, w))

    w = _Writer()
    w.put(len(idx.points))
    for pt in idx.points:
        w.put(pt.kind, pt.rule, pt.child, pt.offset, pt.weight, pt.xref.symbol, *_yref_fields(pt.yref))
    sections.append((SEC_POINTS, w))

    w = _Writer()
    w.put_list(idx.x_order)
    w.put_list(idx.y_order)
    sections.append((SEC_RANKS, w))

    w = _Writer()
    w.put(len(idx.periodic))
    for sig in sorted(idx.periodic):
        e = idx.periodic[sig]
        w.put(e.sig, e.p, e.key_rule)
        w.put_list(e.rows)
        w.put_list(e.cols)
        w.put_list(e.rules)
        w.put(len(e.grid.points))
        for pt in e.grid.points:
            w.put(pt.x, pt.y, *pt.payload)
    sections.append((SEC_PERIODIC, w))

    w = _Writer()
    w.put(idx.scheme.modulus, idx.scheme.base, idx.seed)
    sections.append((SEC_SCHEME, w))

    payload = b"".join(
        struct.pack("<BQ", tag, len(body)) + body for tag, body in ((t, w.tobytes()) for t, w in sections)
    )
    head = _HEADER.pack(MAGIC, VERSION, len(payload))
    return head + payload + _CRC.pack(zlib.crc32(head + payload))


def deserialize_index(data: bytes) -> Index:
    if len(data) < 4:
        raise Truncated("file shorter than the magic number")
    if data[:4] != MAGIC:
        raise BadMagic(f"bad magic {data[:4]!r}")
    if len(data) < _HEADER.size:
        raise Truncated("file shorter than the header")
    _, version, length = _HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatch(f"index version {version}, this build reads {VERSION}")
    end = _HEADER.size + length
    if len(data) < end + _CRC.size:
        raise Truncated(f"expected {end + _CRC.size} bytes, got {len(data)}")
    (crc,) = _CRC.unpack_from(data, end)
    if zlib.crc32(data[:end]) != crc:
        raise ChecksumMismatch("CRC32 does not match")

    sections: dict[int, _Reader] = {}
    pos = _HEADER.size
    while pos < end:
        if pos + 9 > end:
            raise Truncated("section header runs past the payload")
        tag, size = struct.unpack_from("<BQ", data, pos)
        pos += 9
        if pos + size > end:
            raise Truncated("section body runs past the payload")
        sections[tag] = _Reader(data[pos : pos + size])
        pos += size
    missing = {SEC_GRAMMAR, SEC_OCC, SEC_POINTS, SEC_RANKS, SEC_PERIODIC, SEC_SCHEME} - set(sections)
    if missing:
        raise Truncated(f"missing sections {sorted(missing)}")

    r = sections[SEC_GRAMMAR]
    chars = [chr(c) for c in r.get_list()]
    start, nsym = r.get(), r.get()
    rules: list[Rule | None] = [None] * nsym
    names = [""] + [repr(ch) for ch in chars]
    for x in range(len(chars) + 1, nsym):
        names.append(r.get_str())
        exponent = r.get()
        rules[x] = Rule(x, tuple(r.get_list()), exponent)
    g = Grammar(chars, rules, names, start)

    counts = sections[SEC_OCC].get_list()
    mentions: list[list[Mention]] = [[] for _ in rules]
    for rule in g.nonterminal_rules():
        if rule.is_run:
            mentions[rule.base].append(Mention(rule.head, 0, g.lengths[rule.base], rule.exponent))
        else:
            off = 0
            for y in rule.body:
                mentions[y].append(Mention(rule.head, off))
                off += g.lengths[y]
    occ = OccurrenceModel(counts, mentions, {ch: counts[i + 1] for i, ch in enumerate(chars)})

    r = sections[SEC_POINTS]
    points = []
    for _ in range(r.get()):
        kind, rule, child, offset, weight, xsym, ykind, ya, yb = (r.get() for _ in range(9))
        yref = YSuffix(ya, yb) if ykind == 0 else YPower(ya, yb)
        points.append(MainPoint(kind, rule, child, offset, weight, XRef(xsym), yref))

    r = sections[SEC_RANKS]
    x_order, y_order = r.get_list(), r.get_list()

    r = sections[SEC_PERIODIC]
    periodic = {}
    for _ in range(r.get()):
        sig, p, key_rule = r.get(), r.get(), r.get()
        rows, cols, members = r.get_list(), r.get_list(), r.get_list()
        pts = []
        for _ in range(r.get()):
            x, y = r.get(), r.get()
            pts.append(GridPoint(x, y, tuple(r.get() for _ in range(4))))
        periodic[sig] = PeriodicEntry(sig, p, key_rule, rows, cols, members, Grid(pts, 4, len(cols), len(rows)))

    r = sections[SEC_SCHEME]
    modulus, base, seed = r.get(), r.get(), r.get()
    return Index(g, occ, SignatureScheme(base, modulus), points, x_order, y_order, periodic, seed)
