"""Exception hierarchy. Everything the engine raises on bad input derives from FrobrwError."""
from __future__ import annotations


class FrobrwError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class SignatureError(FrobrwError):
    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class GraphError(FrobrwError):
    pass


class ColourClash(GraphError):
    pass


class TermError(FrobrwError):
    """Syntax or typing error in a term, with the character offset where it was detected."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class RewriteError(FrobrwError):
    pass


class SemanticsError(FrobrwError):
    pass
