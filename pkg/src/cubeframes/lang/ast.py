"""AST node types for pipelines and expressions.

Nodes are frozen dataclasses.  Every node keeps its source span for error
underlining, but spans are excluded from equality so structurally identical
trees compare equal regardless of formatting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import Span

_SPAN = dict(default=None, compare=False, repr=False)


class Expr:
    span: Optional[Span]


@dataclass(frozen=True)
class NumberLit(Expr):
    value: Union[int, float]
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class NaLit(Expr):
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class ColumnRef(Expr):
    name: str
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "!" | "-" | "desc"
    operand: Expr
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class Binary(Expr):
    op: str  # < > <= >= == != %in% & | + - *
    lhs: Expr
    rhs: Expr
    span: Optional[Span] = field(**_SPAN)


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...] = ()
    named_args: tuple[tuple[str, Expr], ...] = ()
    span: Optional[Span] = field(**_SPAN)


class Verb:
    name: str
    span: Optional[Span]


@dataclass(frozen=True)
class FilterVerb(Verb):
    predicates: tuple[Expr, ...]
    span: Optional[Span] = field(**_SPAN)
    name = "filter"


@dataclass(frozen=True)
class SelectVerb(Verb):
    columns: tuple[str, ...]
    exclude: bool = False
    span: Optional[Span] = field(**_SPAN)
    name = "select"


@dataclass(frozen=True)
class MutateVerb(Verb):
    assignments: tuple[tuple[str, Expr], ...]
    span: Optional[Span] = field(**_SPAN)
    name = "mutate"


@dataclass(frozen=True)
class ArrangeVerb(Verb):
    keys: tuple[Expr, ...]
    span: Optional[Span] = field(**_SPAN)
    name = "arrange"


@dataclass(frozen=True)
class GroupByVerb(Verb):
    keys: tuple[Expr, ...]
    span: Optional[Span] = field(**_SPAN)
    name = "group_by"


@dataclass(frozen=True)
class SummarizeVerb(Verb):
    exprs: tuple[Expr, ...]
    span: Optional[Span] = field(**_SPAN)
    name = "summarize"


@dataclass(frozen=True)
class Pipeline:
    stages: tuple[Verb, ...]
    span: Optional[Span] = field(**_SPAN)


def _span_json(span: Optional[Span]) -> Optional[list[int]]:
    return None if span is None else [span[0], span[1]]


def ast_to_json(node) -> dict:
    """Serialize any AST node to the JSON debug form (kind + span + children)."""
    if isinstance(node, NumberLit):
        return {"kind": "number", "span": _span_json(node.span), "value": node.value}
    if isinstance(node, BoolLit):
        return {"kind": "bool", "span": _span_json(node.span), "value": node.value}
    if isinstance(node, NaLit):
        return {"kind": "na", "span": _span_json(node.span)}
    if isinstance(node, ColumnRef):
        return {"kind": "column", "span": _span_json(node.span), "name": node.name}
    if isinstance(node, Unary):
        return {"kind": "unary", "span": _span_json(node.span), "op": node.op,
                "children": [ast_to_json(node.operand)]}
    if isinstance(node, Binary):
        return {"kind": "binary", "span": _span_json(node.span), "op": node.op,
                "children": [ast_to_json(node.lhs), ast_to_json(node.rhs)]}
    if isinstance(node, Call):
        return {"kind": "call", "span": _span_json(node.span), "name": node.name,
                "children": [ast_to_json(a) for a in node.args],
                "named": [{"name": n, "value": ast_to_json(e)}
                          for n, e in node.named_args]}
    if isinstance(node, FilterVerb):
        return {"kind": "filter", "span": _span_json(node.span),
                "children": [ast_to_json(p) for p in node.predicates]}
    if isinstance(node, SelectVerb):
        return {"kind": "select", "span": _span_json(node.span),
                "columns": list(node.columns), "exclude": node.exclude}
    if isinstance(node, MutateVerb):
        return {"kind": "mutate", "span": _span_json(node.span),
                "assignments": [{"target": t, "value": ast_to_json(e)}
                                for t, e in node.assignments]}
    if isinstance(node, ArrangeVerb):
        return {"kind": "arrange", "span": _span_json(node.span),
                "children": [ast_to_json(k) for k in node.keys]}
    if isinstance(node, GroupByVerb):
        return {"kind": "group_by", "span": _span_json(node.span),
                "children": [ast_to_json(k) for k in node.keys]}
    if isinstance(node, SummarizeVerb):
        return {"kind": "summarize", "span": _span_json(node.span),
                "children": [ast_to_json(e) for e in node.exprs]}
    if isinstance(node, Pipeline):
        return {"kind": "pipeline", "span": _span_json(node.span),
                "children": [ast_to_json(s) for s in node.stages]}
    raise TypeError(f"not an AST node: {node!r}")
