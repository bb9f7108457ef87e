"""Minimal s-expression reader used by all three surface grammars.

Atoms are returned as :class:`Symbol` (a ``str`` that remembers where it
was read) and lists as :class:`SList`.  ``;`` starts a comment running to
the end of the line.
"""

from __future__ import annotations

from typing import Iterator, Union

from .errors import ParseError

Pos = tuple[int, int]


class Symbol(str):
    pos: Pos

    def __new__(cls, text: str, pos: Pos = (0, 0)):
        obj = super().__new__(cls, text)
        obj.pos = pos
        return obj


class SList(list):
    def __init__(self, items=(), pos: Pos = (0, 0)):
        super().__init__(items)
        self.pos = pos


SExpr = Union[Symbol, SList]


def _tokens(text: str) -> Iterator[tuple[str, Pos]]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, (line, col)
            i += 1
            col += 1
        else:
            start, start_col = i, col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
                col += 1
            yield text[start:i], (line, start_col)


def read_all(text: str) -> list[SExpr]:
    """Read every top-level expression in ``text``."""
    stack: list[SList] = []
    out: list[SExpr] = []
    for tok, pos in _tokens(text):
        if tok == "(":
            stack.append(SList(pos=pos))
        elif tok == ")":
            if not stack:
                raise ParseError("unexpected ')'", pos)
            done = stack.pop()
            (stack[-1] if stack else out).append(done)
        else:
            (stack[-1] if stack else out).append(Symbol(tok, pos))
    if stack:
        raise ParseError("unclosed '('", stack[-1].pos)
    return out


def read_one(text: str) -> SExpr:
    forms = read_all(text)
    if not forms:
        raise ParseError("empty input", (1, 1))
    if len(forms) > 1:
        raise ParseError(f"unexpected trailing form {render(forms[1])!r}", pos_of(forms[1]))
    return forms[0]


def pos_of(x: SExpr) -> Pos:
    return x.pos


def render(x: SExpr) -> str:
    if isinstance(x, SList):
        return "(" + " ".join(render(y) for y in x) + ")"
    return str(x)


def head(x: SExpr) -> str | None:
    """The leading keyword of a list form, if it is an atom."""
    if isinstance(x, SList) and x and isinstance(x[0], Symbol):
        return str(x[0])
    return None


def expect_arity(x: SList, n: int, what: str) -> None:
    if len(x) - 1 != n:
        raise ParseError(f"{what} expects {n} argument(s), got {len(x) - 1} in {render(x)!r}", x.pos)


def parse_index(tok: SExpr, prefix: str = "x") -> int | None:
    """``x3`` -> 3; anything else -> None."""
    if not isinstance(tok, Symbol) or not tok.startswith(prefix):
        return None
    digits = tok[len(prefix):]
    if not digits.isdigit():
        return None
    if int(digits) < 1 or digits.startswith("0"):
        raise ParseError(f"variable index must be a positive integer: {str(tok)!r}", tok.pos)
    return int(digits)
