"""Tokenizer for the pipeline shorthand.

Lexemes are exact source slices, so concatenating lexemes plus the skipped
whitespace reproduces the input.  ``%in%`` is one token; ``|>`` is
disambiguated from ``|`` by lookahead.  Identifiers may contain dots, which
is how ``is.na`` lexes as a single name.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import LexError, Span


class TokenKind(Enum):
    IDENT = "ident"
    NUMBER = "number"
    NA = "na"
    PIPE = "pipe"          # |>
    LPAREN = "lparen"
    RPAREN = "rparen"
    COMMA = "comma"
    EQUALS = "equals"      # a single =, only valid as a named-arg/assignment separator
    OP = "op"              # < > <= >= == != %in% & | ! + - *
    EOF = "eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.lexeme!r}, {self.span})"


_SIMPLE = {
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
}


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_."


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(src)

    def emit(kind: TokenKind, start: int, end: int) -> int:
        tokens.append(Token(kind, src[start:end], (start, end)))
        return end

    while i < n:
        c = src[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c.isalpha():
            j = i + 1
            while j < n and _ident_char(src[j]):
                j += 1
            kind = TokenKind.NA if src[i:j] == "NA" else TokenKind.IDENT
            i = emit(kind, i, j)
            continue
        if c.isdigit():
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == "." and j + 1 < n and src[j + 1].isdigit():
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            i = emit(TokenKind.NUMBER, i, j)
            continue
        if c in _SIMPLE:
            i = emit(_SIMPLE[c], i, i + 1)
            continue
        if c == "=":
            if i + 1 < n and src[i + 1] == "=":
                i = emit(TokenKind.OP, i, i + 2)
            else:
                i = emit(TokenKind.EQUALS, i, i + 1)
            continue
        if c in "<>":
            j = i + 2 if i + 1 < n and src[i + 1] == "=" else i + 1
            i = emit(TokenKind.OP, i, j)
            continue
        if c == "!":
            j = i + 2 if i + 1 < n and src[i + 1] == "=" else i + 1
            i = emit(TokenKind.OP, i, j)
            continue
        if c == "|":
            if i + 1 < n and src[i + 1] == ">":
                i = emit(TokenKind.PIPE, i, i + 2)
            else:
                i = emit(TokenKind.OP, i, i + 1)
            continue
        if c in "&+-*":
            i = emit(TokenKind.OP, i, i + 1)
            continue
        if c == "%":
            if src[i:i + 4] == "%in%":
                i = emit(TokenKind.OP, i, i + 4)
                continue
            # report however much of %in% was actually there
            j = i + 1
            for expect in "in%":
                if j < n and src[j] == expect:
                    j += 1
                else:
                    break
            raise LexError(f"incomplete operator {src[i:j]!r}: the only "
                           "%-operator is %in%", span=(i, j))
        raise LexError(f"unexpected character {c!r}", span=(i, i + 1))
    tokens.append(Token(TokenKind.EOF, "", (n, n)))
    return tokens
