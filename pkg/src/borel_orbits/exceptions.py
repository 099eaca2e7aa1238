class BorelOrbitsError(ValueError):
    """Base class for rejected input."""


class UnsupportedRootSystem(BorelOrbitsError):
    pass


class NotARoot(BorelOrbitsError):
    pass


class NotAdmissible(BorelOrbitsError):
    """Raised with the first violated clause when a parameter fails a membership test."""


class ScopeError(BorelOrbitsError):
    """The request is outside what the library computes (e.g. a B/C Bruhat order)."""


class InvariantViolation(AssertionError):
    """An identity that is a theorem failed at runtime; always a bug."""
