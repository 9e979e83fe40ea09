"""Vectorized expression evaluation over a frame's rows.

An expression evaluates to a :class:`Vector`: a run of cells plus a kind tag
("num", "bool", or "na" when every cell is NA and the kind is unknowable).
Vectors of length 1 broadcast against longer ones.  Comparisons and
arithmetic propagate NA cell-wise; `&`, `|`, and `!` follow the three-valued
tables in :mod:`.logic`; `is.na` is the one operation that never returns NA.

Summary calls (min, max, mean, sd, sum, quantile) reduce over the evaluation
context: the whole frame inside filter and mutate, the current group's rows
inside summarize.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import (DescOutsideArrange, EvalError, LengthMismatch, Span,
                      TypeMismatch, UnknownColumn, UnknownFunction)
from ..model import NA, Cell, CubeFrame, is_na
from ..lang.ast import (Binary, BoolLit, Call, ColumnRef, Expr, NaLit,
                        NumberLit, Unary)
from .logic import and3, not3, or3
from .stats import SUMMARY_FUNCTIONS, stat_quantile

KNOWN_FUNCTIONS = ("c", "desc", "ifelse", "is.na", "max", "mean", "min",
                   "quantile", "sd", "sum")


@dataclass(frozen=True)
class Vector:
    """An evaluated expression: cells plus a kind tag."""

    kind: str  # "num" | "bool" | "na"
    cells: tuple

    def __len__(self) -> int:
        return len(self.cells)


def _nearest(name: str, candidates: Sequence[str]) -> Optional[str]:
    matches = difflib.get_close_matches(name, candidates, n=1, cutoff=0.6)
    return matches[0] if matches else None


def require_num(v: Vector, span: Optional[Span], what: str) -> Vector:
    if v.kind == "bool":
        raise TypeMismatch(f"{what} needs numbers, not TRUE/FALSE values",
                           span=span, code="type-mismatch",
                           hint="ifelse(test, 1, 0) turns a test into numbers")
    return v


def require_bool(v: Vector, span: Optional[Span], what: str) -> Vector:
    if v.kind == "num":
        raise TypeMismatch(f"{what} needs TRUE/FALSE values, not numbers",
                           span=span, code="type-mismatch",
                           hint="comparison expected - did you mean `==`?")
    return v


def _broadcast(a: Vector, b: Vector, span: Optional[Span]) -> tuple[tuple, tuple]:
    if len(a) == len(b):
        return a.cells, b.cells
    if len(a) == 1:
        return a.cells * len(b), b.cells
    if len(b) == 1:
        return a.cells, b.cells * len(a)
    raise LengthMismatch(expected=len(a), got=len(b), span=span)


def _broadcast_all(vectors: Sequence[Vector],
                   span: Optional[Span]) -> list[tuple]:
    lengths = sorted({len(v) for v in vectors} - {1})
    if len(lengths) > 1:
        raise LengthMismatch(expected=lengths[-1], got=lengths[0], span=span)
    n = lengths[0] if lengths else 1
    return [v.cells * n if len(v) == 1 else v.cells for v in vectors]


def _merge_kind(a: str, b: str) -> str:
    if a == "na":
        return b
    return a


class Evaluator:
    """Evaluates expressions against ``frame`` restricted to ``rows``.

    ``rows`` holds the 0-based row indices visible to column references and
    summary reductions.
    """

    def __init__(self, frame: CubeFrame, rows: Optional[Sequence[int]] = None):
        self.frame = frame
        self.rows = tuple(rows) if rows is not None else tuple(range(frame.nrows))

    def eval(self, expr: Expr) -> Vector:
        if isinstance(expr, NumberLit):
            return Vector("num", (expr.value,))
        if isinstance(expr, BoolLit):
            return Vector("bool", (expr.value,))
        if isinstance(expr, NaLit):
            return Vector("na", (NA,))
        if isinstance(expr, ColumnRef):
            return self._column(expr)
        if isinstance(expr, Unary):
            return self._unary(expr)
        if isinstance(expr, Binary):
            return self._binary(expr)
        if isinstance(expr, Call):
            return self._call(expr)
        raise TypeError(f"not an expression node: {expr!r}")

    # -- leaves -------------------------------------------------------------

    def _column(self, ref: ColumnRef) -> Vector:
        if not self.frame.has_column(ref.name):
            raise UnknownColumn(ref.name,
                                nearest=_nearest(ref.name, self.frame.names),
                                span=ref.span)
        cells = self.frame.column(ref.name)
        return Vector("num", tuple(cells[i] for i in self.rows))

    # -- operators ----------------------------------------------------------

    def _unary(self, expr: Unary) -> Vector:
        if expr.op == "desc":
            raise DescOutsideArrange(span=expr.span)
        operand = self.eval(expr.operand)
        if expr.op == "!":
            require_bool(operand, expr.span, "`!`")
            return Vector("bool", tuple(not3(c) for c in operand.cells))
        require_num(operand, expr.span, "unary `-`")
        return Vector(operand.kind,
                      tuple(NA if is_na(c) else -c for c in operand.cells))

    def _binary(self, expr: Binary) -> Vector:
        op = expr.op
        if op == "%in%":
            return self._membership(expr)
        lhs = self.eval(expr.lhs)
        rhs = self.eval(expr.rhs)
        if op in ("&", "|"):
            require_bool(lhs, expr.lhs.span, f"`{op}`")
            require_bool(rhs, expr.rhs.span, f"`{op}`")
            a, b = _broadcast(lhs, rhs, expr.span)
            fn = and3 if op == "&" else or3
            return Vector("bool", tuple(fn(x, y) for x, y in zip(a, b)))
        require_num(lhs, expr.lhs.span, f"`{op}`")
        require_num(rhs, expr.rhs.span, f"`{op}`")
        a, b = _broadcast(lhs, rhs, expr.span)
        if op in ("+", "-", "*"):
            fn = {"+": lambda x, y: x + y,
                  "-": lambda x, y: x - y,
                  "*": lambda x, y: x * y}[op]
            cells = tuple(NA if is_na(x) or is_na(y) else fn(x, y)
                          for x, y in zip(a, b))
            return Vector(_merge_kind(lhs.kind, rhs.kind), cells)
        fn = {"<": lambda x, y: x < y,
              ">": lambda x, y: x > y,
              "<=": lambda x, y: x <= y,
              ">=": lambda x, y: x >= y,
              "==": lambda x, y: x == y,
              "!=": lambda x, y: x != y}[op]
        cells = tuple(NA if is_na(x) or is_na(y) else fn(x, y)
                      for x, y in zip(a, b))
        return Vector("bool", cells)

    def _membership(self, expr: Binary) -> Vector:
        lhs = require_num(self.eval(expr.lhs), expr.lhs.span, "`%in%`")
        rhs = require_num(self.eval(expr.rhs), expr.rhs.span, "`%in%`")
        # the right side is a value set, never broadcast
        has_na = any(is_na(v) for v in rhs.cells)
        values = {v for v in rhs.cells if not is_na(v)}
        cells = []
        for x in lhs.cells:
            if is_na(x):
                cells.append(True if has_na else NA)
            else:
                cells.append(x in values)
        return Vector("bool", tuple(cells))

    # -- calls ----------------------------------------------------------------

    def _call(self, expr: Call) -> Vector:
        name = expr.name
        if name == "ifelse":
            return self._ifelse(expr)
        if name == "is.na":
            return self._is_na(expr)
        if name == "c":
            return self._combine(expr)
        if name in SUMMARY_FUNCTIONS:
            return self._summary(expr)
        raise UnknownFunction(name, nearest=_nearest(name, KNOWN_FUNCTIONS),
                              span=expr.span)

    def _positional(self, expr: Call, count: int, what: str) -> list[Vector]:
        if expr.named_args:
            bad = expr.named_args[0][0]
            raise EvalError(f"{expr.name}() takes no argument named {bad!r}",
                            span=expr.span, code="bad-named-arg")
        if len(expr.args) != count:
            raise EvalError(
                f"{expr.name}() takes {what}, got {len(expr.args)}",
                span=expr.span, code="bad-arity")
        return [self.eval(a) for a in expr.args]

    def _ifelse(self, expr: Call) -> Vector:
        test, yes, no = self._positional(expr, 3,
                                         "a test and two result values")
        require_bool(test, expr.args[0].span, "the ifelse() test")
        if yes.kind == "num" or no.kind == "num":
            require_num(yes, expr.args[1].span, "ifelse()")
            require_num(no, expr.args[2].span, "ifelse()")
        t, y, n = _broadcast_all([test, yes, no], expr.span)
        cells = tuple(NA if is_na(cond) else (y[i] if cond else n[i])
                      for i, cond in enumerate(t))
        return Vector(_merge_kind(yes.kind, no.kind), cells)

    def _is_na(self, expr: Call) -> Vector:
        (arg,) = self._positional(expr, 1, "one argument")
        return Vector("bool", tuple(is_na(c) for c in arg.cells))

    def _combine(self, expr: Call) -> Vector:
        if expr.named_args:
            raise EvalError("c() takes no named arguments", span=expr.span,
                            code="bad-named-arg")
        if not expr.args:
            raise EvalError("c() needs at least one value", span=expr.span,
                            code="bad-arity")
        cells = []
        kind = "na"
        for arg in expr.args:
            v = require_num(self.eval(arg), arg.span, "c()")
            if len(v) != 1:
                raise EvalError("c() combines single values",
                                span=arg.span, code="nested-vector")
            kind = _merge_kind(kind, v.kind)
            cells.append(v.cells[0])
        return Vector(kind, tuple(cells))

    def _summary(self, expr: Call) -> Vector:
        name = expr.name
        if name == "quantile":
            return self._quantile(expr)
        if expr.named_args:
            bad = expr.named_args[0][0]
            raise EvalError(f"{name}() takes no argument named {bad!r}",
                            span=expr.span, code="bad-named-arg")
        if len(expr.args) != 1:
            raise EvalError(f"{name}() takes one column, got {len(expr.args)}",
                            span=expr.span, code="bad-arity")
        arg = require_num(self.eval(expr.args[0]), expr.args[0].span,
                           f"{name}()")
        result = SUMMARY_FUNCTIONS[name](arg.cells)
        return Vector("na" if is_na(result) else "num", (result,))

    def _quantile(self, expr: Call) -> Vector:
        if len(expr.args) != 1:
            raise EvalError("quantile() takes one column plus probs = ...",
                            span=expr.span, code="bad-arity")
        probs_expr = None
        for arg_name, value in expr.named_args:
            if arg_name != "probs":
                raise EvalError(
                    f"quantile() takes no argument named {arg_name!r}",
                    span=expr.span, code="bad-named-arg")
            probs_expr = value
        if probs_expr is None:
            raise EvalError("quantile() needs probs = ...", span=expr.span,
                            code="bad-arity",
                            hint="for example quantile(red, probs = 0.25)")
        arg = require_num(self.eval(expr.args[0]), expr.args[0].span,
                           "quantile()")
        probs = require_num(self.eval(probs_expr), probs_expr.span,
                             "quantile() probs")
        if len(probs) != 1:
            raise EvalError("probs must be a single number",
                            span=probs_expr.span, code="bad-arity")
        result = stat_quantile(arg.cells, probs.cells[0], span=probs_expr.span)
        return Vector("na" if is_na(result) else "num", (result,))


def eval_expr(frame: CubeFrame, expr: Expr,
              rows: Optional[Sequence[int]] = None) -> Vector:
    """Evaluate ``expr`` against ``frame`` (optionally restricted to ``rows``)."""
    return Evaluator(frame, rows).eval(expr)
