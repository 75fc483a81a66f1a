"""Exception types shared across the toolkit.

Loaders raise :class:`ParseError` for syntactically broken files,
:class:`ValidationError` for well-formed records that violate a manifest
invariant, and :class:`SchemaError` for frontend-output records that
disagree with the manifest or with themselves. Scoring and evaluation
raise the more specific types below; everything derives from
:class:`AvCheckError` so callers can catch the whole family at once.
"""


class AvCheckError(Exception):
    """Base class for all toolkit errors."""


class ParseError(AvCheckError):
    """A file could not be parsed. Carries a locus (path and line number)."""

    def __init__(self, message, path=None, line=None):
        locus = ""
        if path is not None:
            locus = f"{path}"
            if line is not None:
                locus += f":{line}"
            locus += ": "
        super().__init__(f"{locus}{message}")
        self.path = path
        self.line = line


class ValidationError(AvCheckError):
    """A record violates a cross-field or cross-record invariant."""


class SchemaError(AvCheckError):
    """A frontend output record is inconsistent with itself or its manifest entry."""


class DimensionMismatch(AvCheckError):
    """Paired vectors have different dimensions."""


class EmptyInput(AvCheckError):
    """An aggregate was requested over an empty collection."""


class MissingSystem(AvCheckError):
    """Fusion was requested with one or more system scores absent."""


class DegenerateLabels(AvCheckError):
    """A ranking metric was requested on single-class data."""
