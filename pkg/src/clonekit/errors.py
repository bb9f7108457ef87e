"""Exception hierarchy shared by every front-end."""

from __future__ import annotations


class CloneKitError(Exception):
    pass


class ParseError(CloneKitError):
    """Malformed input text or JSON. Carries a (line, column) position when known."""

    def __init__(self, message: str, pos: tuple[int, int] | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at line {pos[0]}, column {pos[1]}"
        super().__init__(message)


class SemanticError(CloneKitError):
    pass


class EnvTooShort(SemanticError):
    pass


class UnknownSymbol(SemanticError):
    pass


class DomainMismatch(SemanticError):
    pass


class BoundExceeded(SemanticError):
    pass
