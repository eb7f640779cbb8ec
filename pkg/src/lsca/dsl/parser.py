"""LL(1) recursive-descent parser producing an AlgebraDef.

    file    := 'algebra' IDENT kind ';' stmt* EOF
    kind    := 'lie' | 'lsc' | 'raw'
    stmt    := 'params' pdecl (',' pdecl)* ';'
             | 'nonzero' '(' IDENT (',' IDENT)* ')' ';'
             | 'generators' IDENT (',' IDENT)* ';'
             | 'bracket' '[' IDENT '_' IDENT ']' '=' expr ';'
             | 'default' 'zero' ';'
    pdecl   := IDENT ['nonzero']
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ['^' ['-'] INT]
    atom    := INT | RAT | IDENT | '(' expr ')'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .lexer import ParseError, SemanticError, SourceSpan, Token, tokenize

RESERVED = {"del": "the derivation", "lam": "the bracket variable"}
INTERNAL = ("mu", "nu")
MAX_DEPTH = 200
MAX_EXPONENT = 64

_SP = dict(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class Name:
    id: str
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    span: SourceSpan = field(**_SP)


Expr = Union[Num, Name, Neg, BinOp, Pow]


@dataclass(frozen=True)
class ParamDecl:
    name: str
    nonzero: bool = False
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class BracketClause:
    left: str
    right: str
    expr: Expr
    span: SourceSpan = field(**_SP)


@dataclass(frozen=True)
class AlgebraDef:
    name: str
    kind: str
    params: tuple[ParamDecl, ...]
    nonzero_groups: tuple[tuple[str, ...], ...]
    generators: tuple[str, ...]
    brackets: tuple[BracketClause, ...]
    default_zero: bool = False
    span: SourceSpan = field(**_SP)
    generator_spans: tuple[SourceSpan, ...] = field(default=(), compare=False, repr=False)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, expected, what: str | None = None):
        t = self.tok
        found = "end of input" if t.kind == "eof" else f"'{t.text}'"
        exp = sorted(expected)
        msg = what or f"expected {' or '.join(exp)}, found {found}"
        raise ParseError(t.span, msg, exp)

    def expect(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            self.fail({kind}, what and f"expected {what}, found " +
                      ("end of input" if self.tok.kind == "eof" else f"'{self.tok.text}'"))
        return self.advance()

    def ident_list(self) -> list[Token]:
        out = [self.expect("ident", "a name")]
        while self.tok.kind == ",":
            self.advance()
            out.append(self.expect("ident", "a name"))
        return out

    # statements

    def file(self) -> AlgebraDef:
        head = self.expect("algebra", "'algebra'")
        name = self.expect("ident", "an algebra name").text
        if self.tok.kind not in ("lie", "lsc", "raw"):
            self.fail({"lie", "lsc", "raw"})
        kind = self.advance().kind
        self.expect(";")
        params: list[ParamDecl] = []
        groups: list[tuple[Token, ...]] = []
        gens: list[Token] | None = None
        gens_span = None
        brackets: list[BracketClause] = []
        default_zero = False
        while self.tok.kind != "eof":
            k = self.tok.kind
            if k == "params":
                self.advance()
                while True:
                    t = self.expect("ident", "a parameter name")
                    nz = False
                    if self.tok.kind == "nonzero":
                        self.advance()
                        nz = True
                    params.append(ParamDecl(t.text, nz, t.span))
                    if self.tok.kind != ",":
                        break
                    self.advance()
                self.expect(";")
            elif k == "nonzero":
                self.advance()
                self.expect("(")
                groups.append(tuple(self.ident_list()))
                self.expect(")")
                self.expect(";")
            elif k == "generators":
                t = self.advance()
                if gens is not None:
                    raise SemanticError(t.span, "generators declared twice")
                gens_span = t.span
                gens = self.ident_list()
                self.expect(";")
            elif k == "bracket":
                t = self.advance()
                self.expect("[")
                left = self.expect("ident", "a generator name")
                self.expect("_", "'_' marking the lam slot")
                right = self.expect("ident", "a generator name")
                self.expect("]")
                self.expect("=")
                e = self.expr()
                self.expect(";")
                brackets.append(BracketClause(left.text, right.text, e,
                                              SourceSpan(left.span.line, left.span.column,
                                                         right.span.column - left.span.column + len(right.text))
                                              if left.span.line == right.span.line else left.span))
            elif k == "default":
                self.advance()
                self.expect("zero", "'zero'")
                self.expect(";")
                default_zero = True
            else:
                self.fail({"params", "nonzero", "generators", "bracket", "default", "end of input"})
        if gens is None:
            raise SemanticError(head.span, "no 'generators' declaration")
        d = AlgebraDef(name, kind, tuple(params), tuple(tuple(t.text for t in g) for g in groups),
                       tuple(t.text for t in gens), tuple(brackets), default_zero, head.span,
                       tuple(t.span for t in gens))
        _check(d, groups, gens, gens_span)
        return d

    # expressions

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError(self.tok.span, f"expression nested deeper than {MAX_DEPTH}")

    def expr(self) -> Expr:
        self.enter()
        e = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            e = BinOp(op.text, e, self.term(), op.span)
        self.depth -= 1
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance()
            e = BinOp(op.text, e, self.unary(), op.span)
        return e

    def unary(self) -> Expr:
        if self.tok.kind == "-":
            t = self.advance()
            self.enter()
            e = Neg(self.unary(), t.span)
            self.depth -= 1
            return e
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "^":
            caret = self.advance()
            sign = 1
            if self.tok.kind == "-":
                self.advance()
                sign = -1
            if self.tok.kind != "int":
                self.fail({"int"}, "expected exponent (a non-negative integer) after '^', found " +
                          ("end of input" if self.tok.kind == "eof" else f"'{self.tok.text}'"))
            t = self.advance()
            k = sign * int(t.text)
            if k < 0:
                raise SemanticError(t.span, f"negative exponent '-{t.text}' is not allowed")
            if k > MAX_EXPONENT:
                raise SemanticError(t.span, f"exponent '{t.text}' exceeds {MAX_EXPONENT}")
            return Pow(base, k, caret.span)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind in ("int", "rat"):
            self.advance()
            return Num(t.value, t.span)
        if t.kind == "ident":
            self.advance()
            return Name(t.text, t.span)
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail({"int", "rat", "ident", "("},
                  "expected a number, name or '(', found " +
                  ("end of input" if t.kind == "eof" else f"'{t.text}'"))


def _walk(e: Expr):
    yield e
    if isinstance(e, Neg):
        yield from _walk(e.operand)
    elif isinstance(e, BinOp):
        yield from _walk(e.left)
        yield from _walk(e.right)
    elif isinstance(e, Pow):
        yield from _walk(e.base)


def _check(d: AlgebraDef, groups, gens, gens_span) -> None:
    seen: dict[str, str] = {}
    for p in d.params:
        if p.name in RESERVED or p.name in INTERNAL:
            raise SemanticError(p.span, f"'{p.name}' is reserved")
        if p.name in seen:
            raise SemanticError(p.span, f"parameter '{p.name}' declared twice")
        seen[p.name] = "param"
    for t in gens:
        if t.text in RESERVED or t.text in INTERNAL:
            raise SemanticError(t.span, f"'{t.text}' is reserved")
        if t.text in seen:
            raise SemanticError(t.span, f"'{t.text}' declared twice")
        seen[t.text] = "gen"
    for g in groups:
        for t in g:
            if seen.get(t.text) != "param":
                raise SemanticError(t.span, f"'{t.text}' in nonzero group is not a declared parameter")
    pairs = {}
    gen_names = set(d.generators)
    for br in d.brackets:
        for side in (br.left, br.right):
            if side not in gen_names:
                raise SemanticError(br.span, f"'{side}' is not a declared generator")
        key = (br.left, br.right)
        if key in pairs:
            raise SemanticError(br.span, f"duplicate clause for [{br.left} _ {br.right}]")
        pairs[key] = br
        for node in _walk(br.expr):
            if isinstance(node, Name):
                if node.id in INTERNAL:
                    raise SemanticError(node.span, f"'{node.id}' is internal and cannot appear in source")
                if node.id not in seen and node.id not in RESERVED:
                    raise SemanticError(node.span, f"unknown symbol '{node.id}'")
            if isinstance(node, Pow) and node.exponent < 0:
                raise SemanticError(node.span, "negative exponent is not allowed")
    if not d.default_zero:
        missing = [(a, b) for a in d.generators for b in d.generators if (a, b) not in pairs]
        if missing:
            a, b = missing[0]
            raise SemanticError(gens_span, f"no clause for [{a} _ {b}]; add it or declare 'default zero;'")


def parse_algebra(text: str) -> AlgebraDef:
    return _Parser(text).file()


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.fail({"eof"}, f"unexpected '{p.tok.text}' after expression")
    return e
