class CodeFormatError(ValueError):
    """Malformed code description, word, or dimension/rank inconsistency."""


class ScaleGuardError(ValueError):
    """A configured size cap refused the requested computation."""


class RepresentationFormatError(ValueError):
    """A representation file could not be parsed (magic, version, truncation,
    checksum)."""


class InvariantViolation(RuntimeError):
    """A structural invariant of a table or of a descent failed."""
