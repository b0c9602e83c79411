"""Counting, locating and extracting over run-length context-free grammars."""

from .count import count, count_breakdown
from .errors import (
    BadMagic,
    ChecksumMismatch,
    GrammarError,
    IndexFormatError,
    OutOfRange,
    ParamError,
    RLIndexError,
    TooLarge,
    Truncated,
    VersionMismatch,
)
from .extraction import extract
from .grammar import Grammar, compute_occurrence_model, format_grammar, parse_grammar, validate
from .grid import Grid, GridPoint, build_grid
from .index import Index, build_index
from .locate import extract_text, locate
from .mems import k_mems
from .oracle import GenParams, decompress, gen_grammar, gen_patterns, naive_count, naive_locate
from .periods import shortest_period
from .serial import deserialize_index, serialize_index

__all__ = [
    "BadMagic",
    "ChecksumMismatch",
    "GenParams",
    "Grammar",
    "GrammarError",
    "Grid",
    "GridPoint",
    "Index",
    "IndexFormatError",
    "OutOfRange",
    "ParamError",
    "RLIndexError",
    "TooLarge",
    "Truncated",
    "VersionMismatch",
    "build_grid",
    "build_index",
    "compute_occurrence_model",
    "count",
    "count_breakdown",
    "decompress",
    "deserialize_index",
    "extract",
    "extract_text",
    "format_grammar",
    "gen_grammar",
    "gen_patterns",
    "k_mems",
    "locate",
    "naive_count",
    "naive_locate",
    "parse_grammar",
    "serialize_index",
    "shortest_period",
    "validate",
]
