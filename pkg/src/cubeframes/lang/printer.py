"""Canonical text renderer for AST nodes.

The output always reparses to a structurally equal tree, so parentheses are
emitted exactly where precedence demands them: around a looser-binding child,
around a right child of equal precedence (the binary operators associate
left), and around either side of a nested comparison (comparisons do not
chain).
"""

from __future__ import annotations

from .ast import (ArrangeVerb, Binary, BoolLit, Call, ColumnRef, Expr,
                  FilterVerb, GroupByVerb, MutateVerb, NaLit, NumberLit,
                  Pipeline, SelectVerb, SummarizeVerb, Unary, Verb)

_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_CMP = 3
_LEVEL_ADD = 4
_LEVEL_MUL = 5
_LEVEL_UNARY = 6
_LEVEL_ATOM = 7

_BINARY_LEVEL = {
    "|": _LEVEL_OR,
    "&": _LEVEL_AND,
    "<": _LEVEL_CMP, ">": _LEVEL_CMP, "<=": _LEVEL_CMP, ">=": _LEVEL_CMP,
    "==": _LEVEL_CMP, "!=": _LEVEL_CMP, "%in%": _LEVEL_CMP,
    "+": _LEVEL_ADD, "-": _LEVEL_ADD,
    "*": _LEVEL_MUL,
}


def _level(node: Expr) -> int:
    if isinstance(node, Binary):
        return _BINARY_LEVEL[node.op]
    if isinstance(node, Unary) and node.op != "desc":
        return _LEVEL_UNARY
    return _LEVEL_ATOM


def _child(node: Expr, parent_level: int, rightmost: bool) -> str:
    text = _expr(node)
    level = _level(node)
    if level < parent_level:
        return f"({text})"
    if level == parent_level and (rightmost or parent_level == _LEVEL_CMP):
        return f"({text})"
    return text


def _expr(node: Expr) -> str:
    if isinstance(node, NumberLit):
        return repr(node.value)
    if isinstance(node, BoolLit):
        return "TRUE" if node.value else "FALSE"
    if isinstance(node, NaLit):
        return "NA"
    if isinstance(node, ColumnRef):
        return node.name
    if isinstance(node, Unary):
        if node.op == "desc":
            return f"desc({_expr(node.operand)})"
        operand = _expr(node.operand)
        if _level(node.operand) < _LEVEL_UNARY:
            operand = f"({operand})"
        return f"{node.op}{operand}"
    if isinstance(node, Binary):
        level = _BINARY_LEVEL[node.op]
        lhs = _child(node.lhs, level, rightmost=False)
        rhs = _child(node.rhs, level, rightmost=True)
        return f"{lhs} {node.op} {rhs}"
    if isinstance(node, Call):
        parts = [_expr(a) for a in node.args]
        parts += [f"{name} = {_expr(value)}" for name, value in node.named_args]
        return f"{node.name}({', '.join(parts)})"
    raise TypeError(f"not an expression node: {node!r}")


def _verb(verb: Verb) -> str:
    if isinstance(verb, FilterVerb):
        args = ", ".join(_expr(p) for p in verb.predicates)
        return f"filter({args})"
    if isinstance(verb, SelectVerb):
        sign = "-" if verb.exclude else ""
        args = ", ".join(sign + name for name in verb.columns)
        return f"select({args})"
    if isinstance(verb, MutateVerb):
        args = ", ".join(f"{t} = {_expr(e)}" for t, e in verb.assignments)
        return f"mutate({args})"
    if isinstance(verb, ArrangeVerb):
        args = ", ".join(_expr(k) for k in verb.keys)
        return f"arrange({args})"
    if isinstance(verb, GroupByVerb):
        args = ", ".join(_expr(k) for k in verb.keys)
        return f"group_by({args})"
    if isinstance(verb, SummarizeVerb):
        args = ", ".join(_expr(e) for e in verb.exprs)
        return f"summarize({args})"
    raise TypeError(f"not a verb node: {verb!r}")


def pretty_print(node) -> str:
    """Render a pipeline, verb, or expression as canonical one-line text."""
    if isinstance(node, Pipeline):
        return " |> ".join(["data"] + [_verb(s) for s in node.stages])
    if isinstance(node, Verb):
        return _verb(node)
    return _expr(node)
