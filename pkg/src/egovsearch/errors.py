"""Exception types shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class ParseError(EngineError):
    """A document could not be parsed; message carries line/position context."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(EngineError):
    """A parsed document violates the canonical schema; names the offending field."""

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class DuplicateSector(EngineError):
    """Two sectoral ontologies carry the same sector tag."""


class InvalidInput(EngineError):
    """An input failed a precondition (e.g. merging an ontology with validation errors)."""


class UnknownExpression(EngineError):
    """An expression id does not resolve in the loaded ontology."""


class DuplicateServiceId(EngineError):
    """A catalog document defines the same service id twice."""


class UnknownServiceId(EngineError):
    """A service id does not exist in the catalog."""


class EmptyQuery(EngineError):
    """The query text is empty or yields no tokens."""


class OversizedQuery(EngineError):
    """The query text exceeds the accepted length."""


class InvalidEvent(EngineError):
    """An interaction event violates the journal invariants."""
