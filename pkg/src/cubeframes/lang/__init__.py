"""The pipeline shorthand language: tokenizer, parser, AST, and printer."""

from .ast import (
    ArrangeVerb,
    Binary,
    BoolLit,
    Call,
    ColumnRef,
    Expr,
    FilterVerb,
    GroupByVerb,
    MutateVerb,
    NaLit,
    NumberLit,
    Pipeline,
    SelectVerb,
    SummarizeVerb,
    Unary,
    Verb,
    ast_to_json,
)
from .parser import VERBS, parse_answers, parse_expression, parse_pipeline, parse_stage
from .printer import pretty_print
from .tokens import Token, TokenKind, tokenize

__all__ = [
    "ArrangeVerb", "Binary", "BoolLit", "Call", "ColumnRef", "Expr",
    "FilterVerb", "GroupByVerb", "MutateVerb", "NaLit", "NumberLit",
    "Pipeline", "SelectVerb", "SummarizeVerb", "Unary", "Verb",
    "ast_to_json", "VERBS", "parse_answers", "parse_expression",
    "parse_pipeline", "parse_stage", "pretty_print", "Token", "TokenKind",
    "tokenize",
]
