"""Tokens of the .lsca format."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction

KEYWORDS = frozenset(
    ["algebra", "lie", "lsc", "raw", "params", "nonzero", "generators", "bracket", "default", "zero"]
)
PUNCT = frozenset("+-*/^()[]_,;=")
_LETTERS = frozenset(string.ascii_letters)
_IDENT_TAIL = frozenset(string.ascii_letters + string.digits)
_DIGITS = frozenset(string.digits)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str, expected=()):
        self.span = span
        self.message = message
        self.expected = frozenset(expected)
        super().__init__(f"{span}: {message}")

    def render(self, text: str | None = None, path: str = "<input>") -> str:
        out = f"{path}:{self.span}: {self.message}"
        if self.expected:
            out += f" (expected {', '.join(sorted(self.expected))})"
        if text is not None:
            lines = text.splitlines()
            if 0 < self.span.line <= len(lines):
                src = lines[self.span.line - 1]
                out += f"\n  {src}\n  {' ' * (self.span.column - 1)}{'^' * max(1, self.span.length)}"
        return out


class SemanticError(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str    # "ident", "int", "rat", "eof", a keyword, or a punctuation character
    text: str
    span: SourceSpan = field(compare=False)
    value: Fraction | None = None

    def __str__(self) -> str:
        if self.kind in ("ident", "int", "rat"):
            return f"[{self.kind} {self.text}]"
        return f"[{self.text or self.kind}]"


def end_span(text: str) -> SourceSpan:
    """Span for end of input; points at the last character when there is one."""
    if not text:
        return SourceSpan(1, 1, 0)
    lines = text.split("\n")
    while len(lines) > 1 and lines[-1] == "":
        lines.pop()
    # last line holding a character
    for i in range(len(lines) - 1, -1, -1):
        if lines[i]:
            return SourceSpan(i + 1, len(lines[i]), 1)
    return SourceSpan(1, 1, 0)


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col, n = 0, 1, 1, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f\v":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch in _LETTERS:
            j = i + 1
            while j < n and text[j] in _IDENT_TAIL:
                j += 1
            word = text[i:j]
            kind = word if word in KEYWORDS else "ident"
            toks.append(Token(kind, word, SourceSpan(line, start_col, j - i)))
        elif ch in _DIGITS:
            j = i + 1
            while j < n and text[j] in _DIGITS:
                j += 1
            # p/q with no spaces is one rational literal
            if j + 1 < n and text[j] == "/" and text[j + 1] in _DIGITS:
                k = j + 2
                while k < n and text[k] in _DIGITS:
                    k += 1
                num, den = int(text[i:j]), int(text[j + 1:k])
                if den == 0:
                    raise ParseError(SourceSpan(line, start_col, k - i),
                                     f"zero denominator in '{text[i:k]}'")
                toks.append(Token("rat", text[i:k], SourceSpan(line, start_col, k - i), Fraction(num, den)))
                j = k
            else:
                toks.append(Token("int", text[i:j], SourceSpan(line, start_col, j - i), Fraction(int(text[i:j]))))
        elif ch in PUNCT:
            j = i + 1
            toks.append(Token(ch, ch, SourceSpan(line, start_col, 1)))
        else:
            raise ParseError(SourceSpan(line, start_col, 1), f"illegal character {ch!r}")
        col += j - i
        i = j
    toks.append(Token("eof", "", end_span(text)))
    return toks
