"""Exception types shared across the package."""


class CltweError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(CltweError, ValueError):
    """Security or size parameters outside the supported range."""


class LevelError(CltweError, ValueError):
    """An operation was applied to encodings at incompatible levels."""


class DecodeError(CltweError):
    """Noise exceeded the budget, so a secret-key decode cannot be trusted."""


class WitnessError(CltweError, ValueError):
    """A witness refers to set indices outside the instance."""


class SearchLimitExceeded(CltweError):
    """The exact cover search hit its node limit before finishing."""

    def __init__(self, nodes):
        super().__init__(f"search aborted after {nodes} nodes")
        self.nodes = nodes


class PuzzleError(CltweError, ValueError):
    """A puzzle is malformed or its clues conflict."""


class SolutionError(CltweError, ValueError):
    """A claimed puzzle solution breaks a rule or contradicts a clue."""


class FormatError(CltweError, ValueError):
    """A serialized artifact could not be parsed.

    ``offset`` is the byte offset (for binary-ish artifacts) or ``line`` the
    1-based line number (for human-edited text files) where parsing failed.
    """

    def __init__(self, message, offset=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.offset = offset
        self.line = line


class ParseError(FormatError):
    """A puzzle file could not be parsed."""
