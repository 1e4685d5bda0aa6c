"""Exception types shared across the package."""

from .exact import NotASubspace


class RRBError(Exception):
    """Base class for errors raised by this package."""


class ParseError(RRBError, ValueError):
    """Malformed input document; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ShapeError(RRBError, ValueError):
    """An array has the wrong shape for the declared dimensions."""

    def __init__(self, field: str, expected, actual):
        self.field = field
        self.expected = expected
        self.actual = actual
        super().__init__(f"{field}: expected shape {expected}, got {actual}")


class MissingInput(RRBError, KeyError):
    """A command needs a document section that is absent."""

    def __init__(self, section: str):
        self.section = section
        super().__init__(f"missing input section: {section}")

    def __str__(self):
        return self.args[0]


class AxiomError(RRBError, ValueError):
    """Structure constants fail an axiom that was checked on construction."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotACocycle(RRBError, ValueError):
    pass


class NotADeformation(RRBError, ValueError):
    pass


class NotASection(RRBError, ValueError):
    pass


class NotMaurerCartan(RRBError, ValueError):
    pass


class DegreeMismatch(RRBError, ValueError):
    pass


class DegreeOutOfRange(RRBError, ValueError):
    pass


class ArityLimitError(RRBError, ValueError):
    """A multilinear map would exceed the configured arity cap."""


__all__ = [
    "RRBError", "ParseError", "ShapeError", "MissingInput", "AxiomError",
    "NotACocycle", "NotADeformation", "NotASection", "NotMaurerCartan",
    "DegreeMismatch", "DegreeOutOfRange", "ArityLimitError", "NotASubspace",
]
