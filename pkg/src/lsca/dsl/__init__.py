"""The .lsca text format: tokenizer, parser, elaboration and printing."""

from .elaborate import elaborate, load
from .lexer import KEYWORDS, ParseError, SemanticError, SourceSpan, Token, tokenize
from .parser import (
    AlgebraDef,
    BinOp,
    BracketClause,
    Name,
    Neg,
    Num,
    ParamDecl,
    Pow,
    parse_algebra,
    parse_expr,
)
from .printer import dsl_name, format_algebra, format_expr, to_dsl
