"""Exception taxonomy shared across the package."""

from __future__ import annotations


class PddlError(Exception):
    """Base class for everything raised while handling PDDL text or models."""


class PddlSyntaxError(PddlError):
    """Malformed input: bad tokens, unbalanced parens, misspelled keywords.

    Carries the 1-based line and column of the offending token plus the
    absolute character offset, so callers can point at the exact spot.
    """

    def __init__(self, message: str, line: int = 0, col: int = 0, offset: int = 0):
        super().__init__(f"{message} (line {line}, column {col})" if line else message)
        self.message = message
        self.line = line
        self.col = col
        self.offset = offset


class UnsupportedFeature(PddlError):
    """Syntactically plausible PDDL outside the supported STRIPS+typing fragment."""

    def __init__(self, feature: str, line: int = 0, col: int = 0):
        msg = f"unsupported PDDL feature: {feature}"
        if line:
            msg += f" (line {line}, column {col})"
        super().__init__(msg)
        self.feature = feature
        self.line = line
        self.col = col


class SemanticError(PddlError):
    """Well-formed s-expressions that violate domain/problem level rules."""


class UndeclaredObject(SemanticError):
    """An init/goal atom or plan step mentions a constant never declared."""


class UnsupportedDomain(PddlError):
    """A renderer or generator was asked about a domain it has no data for."""


class MissingLexEntry(PddlError):
    """A lexicalization lacks an entry needed to render a domain or problem."""


class IncompleteMap(PddlError):
    """A rename map does not cover every symbol occurring in a domain/problem pair."""

    def __init__(self, missing: list[str]):
        super().__init__(
            "rename map is missing entries for: " + ", ".join(sorted(missing))
        )
        self.missing = sorted(missing)


class ConfigError(PddlError):
    """Gateway or CLI configuration is absent or contradictory."""


class EndpointError(PddlError):
    """The chat-completion endpoint failed after retries."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class CacheMiss(PddlError):
    """Replay mode was asked for a request that is not in the cache."""


class ExtractionFailure(PddlError):
    """No usable PDDL or plan could be pulled out of a raw model response."""

    def __init__(self, missing: tuple[str, ...]):
        super().__init__("could not extract: " + ", ".join(missing))
        self.missing = missing


class PddlWarning(UserWarning):
    """Non-fatal oddities, e.g. duplicate goal literals."""
