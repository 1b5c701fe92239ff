"""Exception taxonomy shared across the catalogue, query engine, and service."""

from __future__ import annotations


class DatashelfError(Exception):
    """Base class for every error raised by this package."""


class SourceUnreadable(DatashelfError):
    """The raw source could not be parsed as a table at all."""


class UnknownFeature(DatashelfError):
    def __init__(self, name: str, offset: int | None = None):
        super().__init__(f"unknown feature: {name!r}")
        self.name = name
        self.offset = offset


class OutOfRange(DatashelfError):
    def __init__(self, index: int, count: int):
        super().__init__(f"index {index} out of range for {count} records")
        self.index = index
        self.count = count


class QueryError(DatashelfError):
    """Base for tokenize/parse/evaluate failures; carries an input offset."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class UnterminatedString(QueryError):
    def __init__(self, offset: int):
        super().__init__(f"unterminated string literal at offset {offset}", offset)


class UnterminatedBacktick(QueryError):
    def __init__(self, offset: int):
        super().__init__(f"unterminated backtick identifier at offset {offset}", offset)


class IllegalCharacter(QueryError):
    def __init__(self, char: str, offset: int):
        super().__init__(f"illegal character {char!r} at offset {offset}", offset)
        self.char = char


class SyntaxError_(QueryError):
    """Parse failure. Named with a trailing underscore to avoid shadowing the builtin."""

    def __init__(self, offset: int, expectation: str):
        super().__init__(f"syntax error at offset {offset}: expected {expectation}", offset)
        self.expectation = expectation


class TypeMismatch(QueryError):
    def __init__(self, subject: str, op: str, offset: int | None = None):
        super().__init__(f"operator {op!r} not applicable to {subject}", offset)
        self.subject = subject
        self.op = op


class InvalidK(DatashelfError):
    def __init__(self, k: int, n: int):
        super().__init__(f"k={k} invalid for {n} vectors (need 1 <= k <= n)")
        self.k = k
        self.n = n


class DimensionMismatch(DatashelfError):
    pass


class ProviderFailure(DatashelfError):
    """Embedding provider unreachable or returned an unusable response."""


class FetchFailure(DatashelfError):
    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class BuildFailure(DatashelfError):
    """Snapshot rebuild failed; the previous snapshot stays live."""


class ConfigError(DatashelfError):
    """Service or schema configuration is missing or malformed."""
