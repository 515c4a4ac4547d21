"""Exception types shared across the package."""


class ZigzagWordsError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLetter(ZigzagWordsError):
    """A letter was used outside the domain of the morphism at hand."""


class EmptyString(ZigzagWordsError):
    """An operation that needs a nonempty string received the empty one."""


class NotProlongable(ZigzagWordsError):
    """The morphism is not prolongable on the requested start letter."""


class NormalizationNotFound(ZigzagWordsError):
    """No normalized power was found below the search cap.

    A normalized power always exists, so this means the cap was too low
    for the morphism at hand; raise it and retry.
    """


class ParseError(ZigzagWordsError):
    """Zigzag shorthand text that does not match the grammar.

    ``position`` is the 0-based offset into the input where parsing failed.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnprintableLetter(ZigzagWordsError):
    """A synthetic (tagged) letter cannot be written in zigzag shorthand."""


class DepthMismatch(ZigzagWordsError):
    """The zigzag list's depth is outside what the conversion supports."""


class ExponentialGrowth(ZigzagWordsError):
    """The start letter has no rank: growth is not polynomially bounded."""


class PreconditionViolation(ZigzagWordsError):
    """A caller-facing precondition of a transform was violated."""


class InternalConstructionError(ZigzagWordsError):
    """A construction failed its own spot verification.

    This always indicates a bug in the construction, never bad input.
    """


class SpecFileError(ZigzagWordsError):
    """A specification file that cannot be parsed or violates invariants."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = path or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class StartLetterMissing(SpecFileError):
    """A morphic spec file has no ``start`` line."""
