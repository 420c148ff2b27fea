"""Exception types shared across the package."""


class TribranchError(Exception):
    """Base class for all domain errors raised by this package."""


class MoveError(TribranchError):
    """An elementary move on a pants decomposition is illegal as requested."""


class MonodromyError(TribranchError):
    """A monodromy matrix violates the open book monodromy invariants."""


class ConstructionError(TribranchError):
    """A surface construction's preconditions are not met."""


class SchemaError(TribranchError):
    """An input document is structurally malformed (not a domain failure)."""
