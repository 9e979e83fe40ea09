"""The six verbs, applied to frames with per-stage lineage.

Each verb application yields the output frame plus row origins (which input
row each output row came from) and diagnostic notes; :func:`eval_pipeline`
packages these as :class:`StageTrace` records for the REPL, the grader, and
the workbench animation.

Grouping notes: group_by only registers keys.  arrange on a grouped frame
sorts within each group and orders the groups by ascending key-tuple.
summarize emits one row per distinct key-tuple, ascending, and clears the
grouping.  filter, select, and mutate ignore groups apart from preserving
them (select refuses to drop a group key).
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import (EvalError, LengthMismatch, NonScalarSummary,
                      SelectDropsGroupKey, TypeMismatch, UnknownColumn)
from ..lang.ast import (ArrangeVerb, ColumnRef, Expr, FilterVerb, GroupByVerb,
                        MutateVerb, Pipeline, SelectVerb, SummarizeVerb,
                        Unary, Verb)
from ..lang.printer import pretty_print
from ..model import (Cell, CubeFrame, FrameDiff, diff_frames,
                     frame_from_columns, is_na)
from .evaluate import Evaluator, Vector, require_bool, require_num
from .logic import and3

Origins = tuple[Optional[int], ...]


@dataclass(frozen=True)
class StageTrace:
    """One verb's effect: the frames before and after, the diff, and notes."""

    verb: Verb
    input_snapshot: CubeFrame
    output_snapshot: CubeFrame
    diff: FrameDiff
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        from .. import frameio
        return {
            "verb": pretty_print(self.verb),
            "input": frameio.frame_to_wire(self.input_snapshot),
            "output": frameio.frame_to_wire(self.output_snapshot),
            "diff": self.diff.to_json(),
            "notes": list(self.notes),
        }


def _sort_key(cell: Cell, descending: bool = False) -> tuple:
    """Orderable key with NA always last, whatever the direction."""
    if is_na(cell):
        return (1, 0)
    return (0, -cell if descending else cell)


def _group_rows(frame: CubeFrame) -> list[tuple[tuple, list[int]]]:
    """Rows bucketed by group key-tuple, buckets in ascending key order.

    An ungrouped frame is one bucket holding every row (empty key-tuple).
    """
    if not frame.groups:
        return [((), list(range(frame.nrows)))]
    key_columns = [frame.column(k) for k in frame.groups]
    buckets: dict[tuple, list[int]] = {}
    for i in range(frame.nrows):
        key = tuple(col[i] for col in key_columns)
        buckets.setdefault(key, []).append(i)
    ordered = sorted(buckets, key=lambda k: tuple(_sort_key(v) for v in k))
    return [(k, buckets[k]) for k in ordered]


def _predicate_cells(frame: CubeFrame, predicate: Expr) -> tuple:
    vec = Evaluator(frame).eval(predicate)
    require_bool(vec, predicate.span, "the filter test")
    if len(vec) == 1:
        return vec.cells * frame.nrows
    if len(vec) != frame.nrows:
        raise LengthMismatch(expected=frame.nrows, got=len(vec),
                             span=predicate.span)
    return vec.cells


def _filter_stage(frame: CubeFrame,
                  verb: FilterVerb) -> tuple[CubeFrame, Origins, tuple]:
    combined = _predicate_cells(frame, verb.predicates[0])
    for predicate in verb.predicates[1:]:
        extra = _predicate_cells(frame, predicate)
        combined = tuple(and3(a, b) for a, b in zip(combined, extra))
    kept = tuple(i for i, c in enumerate(combined) if c is True)
    return frame.take_rows(kept), kept, ()


def _select_stage(frame: CubeFrame,
                  verb: SelectVerb) -> tuple[CubeFrame, Origins, tuple]:
    notes = []
    seen: list[str] = []
    for name in verb.columns:
        if not frame.has_column(name):
            matches = difflib.get_close_matches(name, frame.names, n=1)
            raise UnknownColumn(name, nearest=matches[0] if matches else None,
                                span=verb.span)
        if name in seen:
            notes.append(f"duplicate column {name!r} in select collapsed "
                         "to its first mention")
        else:
            seen.append(name)
    if verb.exclude:
        kept_names = [n for n in frame.names if n not in seen]
    else:
        kept_names = seen
    for key in frame.groups:
        if key not in kept_names:
            raise SelectDropsGroupKey(
                f"select would drop grouping column {key!r}; "
                "keep it or ungroup first",
                span=verb.span, code="select-drops-group-key")
    columns = tuple((n, frame.column(n)) for n in kept_names)
    out = CubeFrame(columns, frame.nrows, frame.groups, frame.summary)
    return out, tuple(range(frame.nrows)), tuple(notes)


def _mutate_stage(frame: CubeFrame,
                  verb: MutateVerb) -> tuple[CubeFrame, Origins, tuple]:
    current = frame
    for target, expr in verb.assignments:
        vec = Evaluator(current).eval(expr)
        require_num(vec, expr.span, f"mutate({target} = ...)")
        if len(vec) == 1:
            cells = vec.cells * current.nrows
        elif len(vec) == current.nrows:
            cells = vec.cells
        else:
            raise LengthMismatch(expected=current.nrows, got=len(vec),
                                 span=expr.span)
        if current.has_column(target):
            columns = tuple((n, cells if n == target else c)
                            for n, c in current.columns)
        else:
            columns = current.columns + ((target, cells),)
        current = CubeFrame(columns, current.nrows, current.groups,
                            current.summary)
    return current, tuple(range(frame.nrows)), ()


def _arrange_keys(verb: ArrangeVerb) -> list[tuple[str, bool]]:
    keys = []
    for key in verb.keys:
        if isinstance(key, Unary) and key.op == "desc":
            inner = key.operand
            if not isinstance(inner, ColumnRef):
                raise EvalError("desc() takes a column name",
                                span=key.span, code="bad-arrange-key")
            keys.append((inner.name, True))
        elif isinstance(key, ColumnRef):
            keys.append((key.name, False))
        else:
            raise EvalError(
                "arrange keys must be column names, optionally in desc()",
                span=getattr(key, "span", verb.span), code="bad-arrange-key")
    return keys


def _arrange_stage(frame: CubeFrame,
                   verb: ArrangeVerb) -> tuple[CubeFrame, Origins, tuple]:
    keys = _arrange_keys(verb)
    key_columns = []
    for name, descending in keys:
        if not frame.has_column(name):
            matches = difflib.get_close_matches(name, frame.names, n=1)
            raise UnknownColumn(name, nearest=matches[0] if matches else None,
                                span=verb.span)
        key_columns.append((frame.column(name), descending))

    def row_key(i: int) -> tuple:
        return tuple(_sort_key(cells[i], descending)
                     for cells, descending in key_columns)

    order: list[int] = []
    for _, rows in _group_rows(frame):
        order.extend(sorted(rows, key=row_key))
    return frame.take_rows(order), tuple(order), ()


def _group_by_stage(frame: CubeFrame,
                    verb: GroupByVerb) -> tuple[CubeFrame, Origins, tuple]:
    notes = []
    keys: list[str] = []
    for key in verb.keys:
        if not isinstance(key, ColumnRef):
            raise EvalError("group_by takes bare column names",
                            span=getattr(key, "span", verb.span),
                            code="bad-group-key")
        if not frame.has_column(key.name):
            matches = difflib.get_close_matches(key.name, frame.names, n=1)
            raise UnknownColumn(key.name,
                                nearest=matches[0] if matches else None,
                                span=key.span)
        if key.name in keys:
            notes.append(f"duplicate group key {key.name!r} collapsed")
        else:
            keys.append(key.name)
    if frame.groups:
        notes.append("regrouping replaced the previous grouping by "
                     + ", ".join(frame.groups))
    return frame.with_groups(keys), tuple(range(frame.nrows)), tuple(notes)


def _summarize_stage(frame: CubeFrame,
                     verb: SummarizeVerb) -> tuple[CubeFrame, Origins, tuple]:
    groups = _group_rows(frame)
    key_names = frame.groups
    names: list[str] = list(key_names)
    columns: list[list[Cell]] = [[] for _ in key_names]
    summary_cells: list[list[Cell]] = []
    for expr in verb.exprs:
        name = pretty_print(expr)
        if name in names:
            raise EvalError(f"duplicate summary column {name!r}",
                            span=expr.span, code="duplicate-summary")
        names.append(name)
        summary_cells.append([])
    for key, rows in groups:
        for j, value in enumerate(key):
            columns[j].append(value)
        for j, expr in enumerate(verb.exprs):
            vec = Evaluator(frame, rows).eval(expr)
            if len(vec) != 1:
                raise NonScalarSummary(
                    f"summary expressions must reduce to one value per "
                    f"group, got {len(vec)}",
                    span=expr.span, code="non-scalar-summary")
            if vec.kind == "bool":
                raise TypeMismatch("summaries must be numbers",
                                   span=expr.span, code="type-mismatch")
            summary_cells[j].append(vec.cells[0])
    nrows = len(groups) if frame.groups else 1
    pairs = list(zip(key_names, (tuple(c) for c in columns)))
    pairs += list(zip(names[len(key_names):],
                      (tuple(c) for c in summary_cells)))
    out = frame_from_columns(pairs, nrows=nrows, groups=(), summary=True)
    return out, (None,) * out.nrows, ()


_STAGES = {
    FilterVerb: _filter_stage,
    SelectVerb: _select_stage,
    MutateVerb: _mutate_stage,
    ArrangeVerb: _arrange_stage,
    GroupByVerb: _group_by_stage,
    SummarizeVerb: _summarize_stage,
}


def apply_verb(frame: CubeFrame, verb: Verb) -> tuple[CubeFrame, Origins, tuple]:
    """Apply one verb; returns (output, row origins, notes)."""
    return _STAGES[type(verb)](frame, verb)


def eval_pipeline(frame: CubeFrame,
                  pipeline: Pipeline) -> tuple[CubeFrame, list[StageTrace]]:
    """Run every stage left to right, collecting a StageTrace per stage."""
    current = frame
    traces: list[StageTrace] = []
    for index, verb in enumerate(pipeline.stages):
        try:
            out, origins, notes = apply_verb(current, verb)
        except EvalError as err:
            if err.stage_index is None:
                err.stage_index = index
            raise
        diff = diff_frames(current, out, origins)
        traces.append(StageTrace(verb, current, out, diff, notes))
        current = out
    return current, traces


# single-verb conveniences used by tests and library callers

def apply_filter(frame: CubeFrame, predicate: Expr) -> CubeFrame:
    return _filter_stage(frame, FilterVerb(predicates=(predicate,)))[0]


def apply_select(frame: CubeFrame, columns: Sequence[str],
                 exclude: bool = False) -> CubeFrame:
    verb = SelectVerb(columns=tuple(columns), exclude=exclude)
    return _select_stage(frame, verb)[0]


def apply_mutate(frame: CubeFrame,
                 assignments: Sequence[tuple[str, Expr]]) -> CubeFrame:
    return _mutate_stage(frame, MutateVerb(assignments=tuple(assignments)))[0]


def apply_arrange(frame: CubeFrame, keys: Sequence[Expr]) -> CubeFrame:
    return _arrange_stage(frame, ArrangeVerb(keys=tuple(keys)))[0]


def apply_group_by(frame: CubeFrame, keys: Sequence[str]) -> CubeFrame:
    verb = GroupByVerb(keys=tuple(ColumnRef(k) for k in keys))
    return _group_by_stage(frame, verb)[0]


def apply_summarize(frame: CubeFrame, exprs: Sequence[Expr]) -> CubeFrame:
    return _summarize_stage(frame, SummarizeVerb(exprs=tuple(exprs)))[0]
