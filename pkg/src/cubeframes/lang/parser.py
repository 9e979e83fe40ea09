"""Recursive-descent parser for pipelines and expressions.

Binary operators are parsed by precedence climbing.  Precedence, tightest
first: unary `!`/`-`, then `*`, then `+ -`, then the comparisons and `%in%`
(non-associative), then `&`, then `|`.  Parentheses override.

A pipeline is `data` followed by zero or more `|> verb(...)` stages.
"""

from __future__ import annotations

import difflib
from typing import Optional, Union

from ..errors import MixedSelectSigns, ParseError, Span, UnknownVerb
from .ast import (ArrangeVerb, Binary, BoolLit, Call, ColumnRef, Expr,
                  FilterVerb, GroupByVerb, MutateVerb, NaLit, NumberLit,
                  Pipeline, SelectVerb, SummarizeVerb, Unary, Verb)
from .tokens import Token, TokenKind, tokenize

VERBS = ("filter", "select", "mutate", "arrange", "group_by", "summarize")

_CMP_OPS = ("<", ">", "<=", ">=", "==", "!=", "%in%")
_ADD_OPS = ("+", "-")


def _join_span(a: Optional[Span], b: Optional[Span]) -> Optional[Span]:
    if a is None or b is None:
        return a or b
    return (a[0], b[1])


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_op(self, *lexemes: str) -> bool:
        tok = self.peek()
        return tok.kind is TokenKind.OP and tok.lexeme in lexemes

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise self.fail(what, tok)
        return self.advance()

    def fail(self, expected: str, tok: Optional[Token] = None,
             hint: Optional[str] = None, code: Optional[str] = None) -> ParseError:
        tok = tok or self.peek()
        found = tok.lexeme if tok.kind is not TokenKind.EOF else "end of input"
        return ParseError(f"expected {expected}, found {found!r}" if found != "end of input"
                          else f"expected {expected}, found end of input",
                          span=tok.span, expected=expected, found=found,
                          hint=hint, code=code)

    # -- pipeline ----------------------------------------------------------

    def parse_pipeline(self) -> Pipeline:
        head = self.peek()
        if head.kind is not TokenKind.IDENT or head.lexeme != "data":
            raise self.fail("the pipeline head `data`", head)
        self.advance()
        start = head.span
        stages: list[Verb] = []
        end = head.span
        while self.peek().kind is TokenKind.PIPE:
            self.advance()
            verb = self.parse_verb()
            stages.append(verb)
            end = verb.span or end
        self.expect(TokenKind.EOF, "`|>` or end of input")
        return Pipeline(stages=tuple(stages), span=_join_span(start, end))

    def parse_verb(self) -> Verb:
        tok = self.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self.fail("a verb name", tok)
        name = tok.lexeme
        if name not in VERBS:
            matches = difflib.get_close_matches(name, VERBS, n=1)
            raise UnknownVerb(name, span=tok.span,
                              suggestion=matches[0] if matches else None)
        self.advance()
        lparen = self.expect(TokenKind.LPAREN, "`(` after verb name")
        builder = getattr(self, f"_verb_{name}")
        verb = builder()
        rparen = self.expect(TokenKind.RPAREN, "`)` closing the verb arguments")
        return _with_span(verb, _join_span(tok.span, rparen.span))

    def _expr_list(self, what: str) -> tuple[Expr, ...]:
        if self.peek().kind is TokenKind.RPAREN:
            raise self.fail(what)
        exprs = [self.parse_expr()]
        while self.peek().kind is TokenKind.COMMA:
            self.advance()
            exprs.append(self.parse_expr())
        return tuple(exprs)

    def _verb_filter(self) -> FilterVerb:
        return FilterVerb(predicates=self._expr_list("a predicate expression"))

    def _verb_arrange(self) -> ArrangeVerb:
        return ArrangeVerb(keys=self._expr_list("a sort key"))

    def _verb_group_by(self) -> GroupByVerb:
        return GroupByVerb(keys=self._expr_list("a grouping column"))

    def _verb_summarize(self) -> SummarizeVerb:
        return SummarizeVerb(exprs=self._expr_list("a summary expression"))

    def _verb_select(self) -> SelectVerb:
        names: list[str] = []
        signs: list[bool] = []
        spans: list[Span] = []
        while True:
            exclude = False
            tok = self.peek()
            if self.at_op("-"):
                exclude = True
                self.advance()
            ident = self.expect(TokenKind.IDENT, "a column name in select")
            names.append(ident.lexeme)
            signs.append(exclude)
            spans.append(_join_span(tok.span, ident.span))
            if self.peek().kind is not TokenKind.COMMA:
                break
            self.advance()
        if len(set(signs)) > 1:
            first_odd = signs.index(not signs[0])
            raise MixedSelectSigns(span=spans[first_odd])
        return SelectVerb(columns=tuple(names), exclude=signs[0])

    def _verb_mutate(self) -> MutateVerb:
        assignments: list[tuple[str, Expr]] = []
        while True:
            target = self.expect(TokenKind.IDENT, "a new column name in mutate")
            self.expect(TokenKind.EQUALS, "`=` after the mutate target")
            assignments.append((target.lexeme, self.parse_expr()))
            if self.peek().kind is not TokenKind.COMMA:
                break
            self.advance()
        return MutateVerb(assignments=tuple(assignments))

    # -- expressions -------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self._parse_or()

    def _parse_or(self) -> Expr:
        lhs = self._parse_and()
        while self.at_op("|"):
            self.advance()
            rhs = self._parse_and()
            lhs = Binary("|", lhs, rhs, span=_join_span(lhs.span, rhs.span))
        return lhs

    def _parse_and(self) -> Expr:
        lhs = self._parse_cmp()
        while self.at_op("&"):
            self.advance()
            rhs = self._parse_cmp()
            lhs = Binary("&", lhs, rhs, span=_join_span(lhs.span, rhs.span))
        return lhs

    def _parse_cmp(self) -> Expr:
        lhs = self._parse_add()
        if self.peek().kind is TokenKind.EQUALS:
            # classic student slip: `filter(red = 3)`
            raise self.fail("a comparison", hint="use `==` to compare values; "
                            "`=` only assigns names to arguments",
                            code="eq-vs-eqeq")
        if not self.at_op(*_CMP_OPS):
            return lhs
        op = self.advance()
        rhs = self._parse_add()
        node = Binary(op.lexeme, lhs, rhs, span=_join_span(lhs.span, rhs.span))
        if self.at_op(*_CMP_OPS):
            raise ParseError("comparisons cannot be chained",
                             span=self.peek().span,
                             expected="`&`, `|`, `,`, or `)`",
                             found=self.peek().lexeme,
                             hint="join two comparisons with `&`",
                             code="chained-comparison")
        return node

    def _parse_add(self) -> Expr:
        lhs = self._parse_mul()
        while self.at_op(*_ADD_OPS):
            op = self.advance()
            rhs = self._parse_mul()
            lhs = Binary(op.lexeme, lhs, rhs, span=_join_span(lhs.span, rhs.span))
        return lhs

    def _parse_mul(self) -> Expr:
        lhs = self._parse_unary()
        while self.at_op("*"):
            self.advance()
            rhs = self._parse_unary()
            lhs = Binary("*", lhs, rhs, span=_join_span(lhs.span, rhs.span))
        return lhs

    def _parse_unary(self) -> Expr:
        if self.at_op("!", "-"):
            op = self.advance()
            operand = self._parse_unary()
            return Unary(op.lexeme, operand, span=_join_span(op.span, operand.span))
        return self._parse_primary()

    def _parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            value = float(tok.lexeme) if "." in tok.lexeme else int(tok.lexeme)
            return NumberLit(value, span=tok.span)
        if tok.kind is TokenKind.NA:
            self.advance()
            return NaLit(span=tok.span)
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.parse_expr()
            self.expect(TokenKind.RPAREN, "`)` closing the parenthesis")
            return inner
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if tok.lexeme in ("TRUE", "FALSE"):
                return BoolLit(tok.lexeme == "TRUE", span=tok.span)
            if self.peek().kind is TokenKind.LPAREN:
                return self._parse_call(tok)
            return ColumnRef(tok.lexeme, span=tok.span)
        raise self.fail("a value, column, or function call", tok)

    def _parse_call(self, name_tok: Token) -> Expr:
        self.advance()  # LPAREN
        args: list[Expr] = []
        named: list[tuple[str, Expr]] = []
        if self.peek().kind is not TokenKind.RPAREN:
            while True:
                tok = self.peek()
                if (tok.kind is TokenKind.IDENT
                        and self.tokens[self.pos + 1].kind is TokenKind.EQUALS):
                    self.advance()
                    self.advance()
                    named.append((tok.lexeme, self.parse_expr()))
                else:
                    if named:
                        raise self.fail("a named argument",
                                        hint="positional arguments cannot "
                                        "follow named ones")
                    args.append(self.parse_expr())
                if self.peek().kind is not TokenKind.COMMA:
                    break
                self.advance()
        rparen = self.expect(TokenKind.RPAREN, "`)` closing the call")
        span = _join_span(name_tok.span, rparen.span)
        if name_tok.lexeme == "desc":
            if named or len(args) != 1:
                raise ParseError("desc() takes exactly one sort key",
                                 span=span, code="desc-arity")
            return Unary("desc", args[0], span=span)
        return Call(name_tok.lexeme, args=tuple(args), named_args=tuple(named),
                    span=span)


def _with_span(verb: Verb, span: Optional[Span]) -> Verb:
    object.__setattr__(verb, "span", span)
    return verb


def parse_pipeline(src: str) -> Pipeline:
    return _Parser(src).parse_pipeline()


def parse_expression(src: str) -> Expr:
    parser = _Parser(src)
    expr = parser.parse_expr()
    parser.expect(TokenKind.EOF, "end of input")
    return expr


def parse_stage(src: str) -> Verb:
    """Parse a single `verb(...)` stage, as typed at the REPL."""
    parser = _Parser(src)
    verb = parser.parse_verb()
    parser.expect(TokenKind.EOF, "end of input")
    return verb


def parse_answers(src: str) -> tuple[Union[int, float, str], ...]:
    """Parse a comma-separated answer list: numbers and bare names only.

    Used for grading short-answer exercises such as "which colors appear".
    """
    parser = _Parser(src)
    values: list[Union[int, float, str]] = []
    if parser.peek().kind is TokenKind.EOF:
        return ()
    while True:
        tok = parser.peek()
        negate = False
        if parser.at_op("-"):
            parser.advance()
            negate = True
            tok = parser.peek()
        if tok.kind is TokenKind.NUMBER:
            parser.advance()
            num = float(tok.lexeme) if "." in tok.lexeme else int(tok.lexeme)
            values.append(-num if negate else num)
        elif tok.kind is TokenKind.IDENT and not negate:
            parser.advance()
            values.append(tok.lexeme)
        else:
            raise parser.fail("a number or a name")
        if parser.peek().kind is not TokenKind.COMMA:
            break
        parser.advance()
    parser.expect(TokenKind.EOF, "`,` or end of input")
    return tuple(values)
