"""Exception types shared across modules."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class GlcError(Exception):
    pass


class ParseError(GlcError, ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} at line {span.line}, column {span.column}")
        self.message = message
        self.span = span


class NotNormalError(GlcError, ValueError):
    """Input is not in the normal form an operation requires."""


class ResourceError(GlcError):
    """Enumeration would exceed the configured bit budget."""


class DepthError(GlcError, ValueError):
    """A chain is longer than the frame it is evaluated in."""


class RuleError(GlcError, ValueError):
    """A rule was applied at a position where it does not match."""


class VariantError(GlcError, ValueError):
    """Input outside the fragment the variant calculus handles."""


class MissingQueryPoint(GlcError, KeyError):
    pass
