"""Exception hierarchy shared by the grammar, index and CLI layers."""


class RLIndexError(Exception):
    """Base class for all errors raised by this package."""


class GrammarError(RLIndexError):
    """A grammar source or grammar object violates the RLCFG rules."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(GrammarError):
    pass


class UndefinedSymbol(GrammarError):
    pass


class DuplicateRule(GrammarError):
    pass


class CycleDetected(GrammarError):
    pass


class ExponentTooSmall(GrammarError):
    pass


class EmptyBody(GrammarError):
    pass


class OutOfRange(RLIndexError, IndexError):
    pass


class EmptyString(RLIndexError, ValueError):
    pass


class RankOutOfRange(RLIndexError, ValueError):
    pass


class OverflowRisk(RLIndexError, OverflowError):
    pass


class SignatureCollision(RLIndexError):
    pass


class TooLarge(RLIndexError):
    pass


class ParamError(RLIndexError, ValueError):
    pass


class IndexFormatError(RLIndexError):
    """The bytes handed to the deserializer are not a valid index."""


class BadMagic(IndexFormatError):
    pass


class VersionMismatch(IndexFormatError):
    pass


class ChecksumMismatch(IndexFormatError):
    pass


class Truncated(IndexFormatError):
    pass
