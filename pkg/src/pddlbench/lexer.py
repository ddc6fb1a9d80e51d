"""S-expression tokenizer for PDDL text.

Input is case-folded to lowercase. ``;`` starts a comment running to end of
line. The only delimiters are parentheses and whitespace; everything else
(including ``?var``, ``:keyword`` and a bare ``-``) is an atom token.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PddlSyntaxError

_DELIMS = frozenset("()")
_WS = frozenset(" \t\r\n\f\v")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int
    offset: int


def tokenize(text: str) -> list[Token]:
    """Split PDDL text into ``(`` / ``)`` / atom tokens with positions."""
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in _WS:
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _DELIMS:
            tokens.append(Token(ch, line, col, i))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in _WS and text[i] not in _DELIMS and text[i] != ";":
                i += 1
                col += 1
            tokens.append(Token(text[start:i].lower(), line, start_col, start))
    return tokens


def token_texts(text: str) -> list[str]:
    return [t.text for t in tokenize(text)]


# --- reader: tokens -> nested lists -----------------------------------------

@dataclass(frozen=True)
class Atom:
    """A leaf of the s-expression tree, with source position."""

    text: str
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    """A parenthesized node; position is the opening paren's."""

    items: tuple
    line: int
    col: int


SExpr = Atom | SList


def read_sexprs(text: str) -> list[SExpr]:
    """Read every top-level s-expression in ``text``.

    Raises PddlSyntaxError on unbalanced parentheses.
    """
    tokens = tokenize(text)
    out: list[SExpr] = []
    pos = 0

    def read_one() -> SExpr:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok.text == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise PddlSyntaxError(
                        "unbalanced parentheses: missing ')'", tok.line, tok.col, tok.offset
                    )
                if tokens[pos].text == ")":
                    pos += 1
                    return SList(tuple(items), tok.line, tok.col)
                items.append(read_one())
        if tok.text == ")":
            raise PddlSyntaxError("unexpected ')'", tok.line, tok.col, tok.offset)
        return Atom(tok.text, tok.line, tok.col)

    while pos < len(tokens):
        out.append(read_one())
    return out
