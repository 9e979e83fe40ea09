"""Exercise bank: graded tasks with teaching hints for classic mistakes.

Every built-in exercise carries a hand-written expected result, so grading a
model solution genuinely cross-checks the engine against an independent
derivation rather than against itself.

Grading modes:
    exact_frame           cells, column order, and row order must all match
    frame_up_to_row_order row order is free (tasks where order is arbitrary)
    scalar_answers        a comma-separated list, compared as a multiset

Pitfall rules fire alongside an incorrect verdict and explain the likely
mistake (select inside a filter task, swapped `&`/`|`, `=` for `==`,
desc() outside arrange).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from .engine import eval_pipeline
from .errors import CubesError, SourceError
from .fixtures import LESSON_PIPELINES, figure1, figure1_without_purple
from .lang import parse_answers, parse_pipeline
from .lang.ast import Binary, Expr, FilterVerb, Pipeline, SelectVerb
from .model import (NA, Cell, CubeFrame, FrameDiff, cells_equal,
                    frame_from_columns, is_na, make_frame)

EXACT_FRAME = "exact_frame"
UP_TO_ROW_ORDER = "frame_up_to_row_order"
SCALAR_ANSWERS = "scalar_answers"

Answer = Union[int, float, str]


@dataclass(frozen=True)
class ExpectedResult:
    mode: str
    payload: Union[CubeFrame, tuple[Answer, ...]]

    def __post_init__(self) -> None:
        if self.mode == SCALAR_ANSWERS:
            if not isinstance(self.payload, tuple):
                raise ValueError("scalar_answers payload must be a tuple")
        elif self.mode in (EXACT_FRAME, UP_TO_ROW_ORDER):
            if not isinstance(self.payload, CubeFrame):
                raise ValueError(f"{self.mode} payload must be a CubeFrame")
        else:
            raise ValueError(f"unknown grading mode {self.mode!r}")


@dataclass(frozen=True)
class Exercise:
    id: str
    prompt: str
    start_frame: CubeFrame
    expected: ExpectedResult
    model_solution: str
    pitfalls: tuple[str, ...] = ()


@dataclass(frozen=True)
class GradeReport:
    verdict: str  # correct | incorrect | parse_error
    cell_diffs: FrameDiff = FrameDiff()
    triggered_pitfalls: tuple[str, ...] = ()
    error: Optional[SourceError] = None
    result: Optional[CubeFrame] = None

    def to_json(self) -> dict:
        from . import frameio
        error = None
        if self.error is not None:
            error = {
                "message": self.error.message,
                "span": list(self.error.span) if self.error.span else None,
                "hint": self.error.hint,
                "code": self.error.code,
            }
        return {
            "verdict": self.verdict,
            "cell_diffs": self.cell_diffs.to_json(),
            "triggered_pitfalls": list(self.triggered_pitfalls),
            "error": error,
            "result": (None if self.result is None
                       else frameio.frame_to_wire(self.result)),
        }


# ---------------------------------------------------------------------------
# pitfall rules

@dataclass
class PitfallContext:
    exercise: Exercise
    ast: Optional[Pipeline] = None
    result: Optional[CubeFrame] = None
    error: Optional[SourceError] = None


PitfallRule = Callable[[PitfallContext], Optional[str]]


def _expected_frame(ctx: PitfallContext) -> Optional[CubeFrame]:
    if ctx.exercise.expected.mode in (EXACT_FRAME, UP_TO_ROW_ORDER):
        return ctx.exercise.expected.payload
    return None


def _rule_filter_keeps_columns(ctx: PitfallContext) -> Optional[str]:
    expected = _expected_frame(ctx)
    if ctx.ast is None or ctx.result is None or expected is None:
        return None
    uses_select = any(isinstance(s, SelectVerb) for s in ctx.ast.stages)
    if not uses_select:
        return None
    if expected.names != ctx.exercise.start_frame.names:
        return None  # the task itself changes the columns
    if set(ctx.result.names) == set(expected.names):
        return None
    return ("filter changes which rows you keep, never which columns you "
            "have - this task needs no select()")


def _swap_and_or(expr: Expr) -> Expr:
    if isinstance(expr, Binary) and expr.op in ("&", "|"):
        return Binary("|" if expr.op == "&" else "&",
                      _swap_and_or(expr.lhs), _swap_and_or(expr.rhs))
    if isinstance(expr, Binary):
        return Binary(expr.op, _swap_and_or(expr.lhs), _swap_and_or(expr.rhs))
    return expr


def _rule_and_or_swap(ctx: PitfallContext) -> Optional[str]:
    if ctx.ast is None:
        return None
    uses_logic = False
    swapped_stages = []
    for stage in ctx.ast.stages:
        if isinstance(stage, FilterVerb):
            swapped = tuple(_swap_and_or(p) for p in stage.predicates)
            if swapped != stage.predicates:
                uses_logic = True
            swapped_stages.append(FilterVerb(predicates=swapped))
        else:
            swapped_stages.append(stage)
    if not uses_logic:
        return None
    expected = _expected_frame(ctx)
    if expected is None:
        return None
    try:
        retry, _ = eval_pipeline(ctx.exercise.start_frame,
                                 Pipeline(stages=tuple(swapped_stages)))
    except CubesError:
        return None
    if not _frames_match(ctx.exercise.expected, retry):
        return None
    return ("`&` keeps a row only when BOTH tests pass; `|` keeps it when "
            "either one does - the other operator gives the expected rows")


def _rule_assign_vs_compare(ctx: PitfallContext) -> Optional[str]:
    if ctx.error is not None and ctx.error.code == "eq-vs-eqeq":
        return "`=` names an argument; `==` tests whether two values are equal"
    return None


def _rule_desc_misplaced(ctx: PitfallContext) -> Optional[str]:
    if ctx.error is not None and ctx.error.code == "desc-misplaced":
        return "desc() only flips the sort direction inside arrange(...)"
    return None


PITFALL_RULES: dict[str, PitfallRule] = {
    "filter-keeps-columns": _rule_filter_keeps_columns,
    "and-or-swap": _rule_and_or_swap,
    "assign-vs-compare": _rule_assign_vs_compare,
    "desc-misplaced": _rule_desc_misplaced,
}


def diagnose_pitfalls(exercise: Exercise,
                      ast: Optional[Pipeline] = None,
                      result: Optional[CubeFrame] = None,
                      error: Optional[SourceError] = None) -> list[str]:
    """Messages from the exercise's pitfall rules that apply to a submission."""
    ctx = PitfallContext(exercise=exercise, ast=ast, result=result, error=error)
    messages = []
    for rule_id in exercise.pitfalls:
        rule = PITFALL_RULES.get(rule_id)
        if rule is None:
            continue
        message = rule(ctx)
        if message is not None:
            messages.append(message)
    return messages


# ---------------------------------------------------------------------------
# grading

def _row_key(row: Sequence[Cell]) -> tuple:
    return tuple("NA" if is_na(v) else float(v) for v in row)


def _frames_match(expected: ExpectedResult, result: CubeFrame) -> bool:
    frame = expected.payload
    if result.names != frame.names:
        return False
    if frame.groups and result.groups != frame.groups:
        return False
    if expected.mode == EXACT_FRAME:
        return result == frame
    if result.nrows != frame.nrows:
        return False
    return (Counter(_row_key(r) for r in result.rows())
            == Counter(_row_key(r) for r in frame.rows()))


def _mismatch_diff(expected: CubeFrame, result: CubeFrame) -> FrameDiff:
    """Column/row sketch of how the submission differs from the expectation.

    Oriented expected -> result: dropped means "expected but missing from the
    submission".  Rows are matched by multiset when counts differ, cells
    positionally when counts agree.
    """
    added = tuple(n for n in result.names if n not in expected.names)
    dropped = tuple(n for n in expected.names if n not in result.names)
    common = [n for n in expected.names if n in result.names]
    changed: tuple[str, ...] = ()
    kept_rows: tuple[int, ...] = ()
    dropped_rows: tuple[int, ...] = ()
    if expected.nrows == result.nrows:
        changed = tuple(
            n for n in common
            if not all(cells_equal(a, b) for a, b in
                       zip(expected.column(n), result.column(n))))
    else:
        available = Counter(_row_key(r) for r in result.rows())
        kept, lost = [], []
        for i in range(expected.nrows):
            key = _row_key(expected.row(i))
            if available[key] > 0:
                available[key] -= 1
                kept.append(i + 1)
            else:
                lost.append(i + 1)
        kept_rows, dropped_rows = tuple(kept), tuple(lost)
    return FrameDiff(kept_rows=kept_rows, dropped_rows=dropped_rows,
                     added_columns=added, dropped_columns=dropped,
                     changed_columns=changed)


def _normalize_answer(v: Answer) -> Union[float, str]:
    return v if isinstance(v, str) else float(v)


def _grade_scalars(exercise: Exercise, submission: str) -> GradeReport:
    try:
        answers = parse_answers(submission)
    except SourceError as err:
        return GradeReport(verdict="parse_error", error=err,
                           triggered_pitfalls=tuple(
                               diagnose_pitfalls(exercise, error=err)))
    expected = Counter(_normalize_answer(v) for v in exercise.expected.payload)
    got = Counter(_normalize_answer(v) for v in answers)
    verdict = "correct" if expected == got else "incorrect"
    return GradeReport(verdict=verdict)


def grade(exercise: Exercise, submission: str) -> GradeReport:
    """Grade a submission string; never raises, all failures are verdicts."""
    if exercise.expected.mode == SCALAR_ANSWERS:
        return _grade_scalars(exercise, submission)
    try:
        ast = parse_pipeline(submission)
    except SourceError as err:
        return GradeReport(verdict="parse_error", error=err,
                           triggered_pitfalls=tuple(
                               diagnose_pitfalls(exercise, error=err)))
    try:
        result, _ = eval_pipeline(exercise.start_frame, ast)
    except SourceError as err:
        return GradeReport(verdict="incorrect", error=err,
                           triggered_pitfalls=tuple(
                               diagnose_pitfalls(exercise, ast=ast, error=err)))
    if _frames_match(exercise.expected, result):
        return GradeReport(verdict="correct", result=result)
    pitfalls = tuple(diagnose_pitfalls(exercise, ast=ast, result=result))
    return GradeReport(verdict="incorrect",
                       cell_diffs=_mismatch_diff(exercise.expected.payload,
                                                 result),
                       triggered_pitfalls=pitfalls, result=result)


# ---------------------------------------------------------------------------
# the built-in bank
#
# Expected frames are written out by hand from the six fixture columns
#     red=(3,4,5) orange=(4,3,6) yellow=(5,5,3) green=(6,4,5)
#     blue=(3,6,4) purple=(4,4,5)
# so grading a model solution is a real engine check, not a tautology.

def _frame(names: Sequence[str], rows: Sequence[Sequence[Cell]],
           groups: Sequence[str] = ()) -> CubeFrame:
    f = make_frame(names, rows)
    return f.with_groups(tuple(groups)) if groups else f


def _summary_frame(pairs: Sequence[tuple[str, Sequence[Cell]]]) -> CubeFrame:
    return frame_from_columns([(n, tuple(c)) for n, c in pairs], summary=True)


def builtin_exercises() -> list[Exercise]:
    f1 = figure1()
    all_names = ("red", "orange", "yellow", "green", "blue", "purple")
    return [
        Exercise(
            id="warmup-dims",
            prompt="Look at the starting grid. How many rows (observations) "
                   "and how many columns (variables) does it have? Answer "
                   "with the two counts, rows first, separated by a comma.",
            start_frame=f1,
            expected=ExpectedResult(SCALAR_ANSWERS, (3, 6)),
            model_solution="3, 6",
        ),
        Exercise(
            id="warmup-values",
            prompt="Which distinct numbers appear anywhere in the grid? "
                   "List each once, in any order.",
            start_frame=f1,
            expected=ExpectedResult(SCALAR_ANSWERS, (3, 4, 5, 6)),
            model_solution="3, 4, 5, 6",
        ),
        Exercise(
            id="warmup-names",
            prompt="Name the variables of the data set. Answer with the "
                   "column names separated by commas.",
            start_frame=f1,
            expected=ExpectedResult(SCALAR_ANSWERS, all_names),
            model_solution="red, orange, yellow, green, blue, purple",
        ),
        Exercise(
            id="filter-1",
            prompt="Keep only the observations where red equals 3 or green "
                   "is greater than 4.",
            start_frame=f1,
            expected=ExpectedResult(UP_TO_ROW_ORDER, _frame(
                all_names,
                [(3, 4, 5, 6, 3, 4),
                 (5, 6, 3, 5, 4, 5)])),
            model_solution=LESSON_PIPELINES["filter-1"],
            pitfalls=("filter-keeps-columns", "and-or-swap",
                      "assign-vs-compare"),
        ),
        Exercise(
            id="select-1",
            prompt="Reduce the data to the red, yellow, and green columns, "
                   "in that order.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                ("red", "yellow", "green"),
                [(3, 5, 6), (4, 5, 4), (5, 3, 5)])),
            model_solution=LESSON_PIPELINES["select-1"],
        ),
        Exercise(
            id="select-2",
            prompt="Drop the green column and keep everything else as is.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                ("red", "orange", "yellow", "blue", "purple"),
                [(3, 4, 5, 3, 4), (4, 3, 5, 6, 4), (5, 6, 3, 4, 5)])),
            model_solution=LESSON_PIPELINES["select-2"],
        ),
        Exercise(
            id="mutate-purple",
            prompt="This grid is missing the purple variable. Add purple "
                   "with the values 4, 4, 5.",
            start_frame=figure1_without_purple(),
            expected=ExpectedResult(EXACT_FRAME, f1),
            model_solution=LESSON_PIPELINES["mutate-purple"],
        ),
        Exercise(
            id="mutate-1",
            prompt="Replace blue so it is 4 wherever red is greater than 3 "
                   "and 5 otherwise.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                all_names,
                [(3, 4, 5, 6, 5, 4),
                 (4, 3, 5, 4, 4, 4),
                 (5, 6, 3, 5, 4, 5)])),
            model_solution=LESSON_PIPELINES["mutate-1"],
            pitfalls=("assign-vs-compare",),
        ),
        Exercise(
            id="mutate-2",
            prompt="Replace orange with 4 where blue equals 6 and 3 "
                   "elsewhere; then replace green with the new orange "
                   "plus 1.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                all_names,
                [(3, 3, 5, 4, 3, 4),
                 (4, 4, 5, 5, 6, 4),
                 (5, 3, 3, 4, 4, 5)])),
            model_solution=LESSON_PIPELINES["mutate-2"],
            pitfalls=("assign-vs-compare",),
        ),
        Exercise(
            id="arrange-1",
            prompt="Sort the observations by red, smallest first.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, f1),
            model_solution=LESSON_PIPELINES["arrange-1"],
            pitfalls=("desc-misplaced",),
        ),
        Exercise(
            id="arrange-2",
            prompt="Sort the observations by red, largest first.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                all_names,
                [(5, 6, 3, 5, 4, 5),
                 (4, 3, 5, 4, 6, 4),
                 (3, 4, 5, 6, 3, 4)])),
            model_solution=LESSON_PIPELINES["arrange-2"],
            pitfalls=("desc-misplaced",),
        ),
        Exercise(
            id="groupby-0",
            prompt="Group the data by purple. No cube should move.",
            start_frame=f1,
            expected=ExpectedResult(UP_TO_ROW_ORDER, _frame(
                all_names,
                [(3, 4, 5, 6, 3, 4),
                 (4, 3, 5, 4, 6, 4),
                 (5, 6, 3, 5, 4, 5)],
                groups=("purple",))),
            model_solution=LESSON_PIPELINES["groupby-0"],
        ),
        Exercise(
            id="groupby-1",
            prompt="Group the data by purple, then sort by red within each "
                   "group.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                all_names,
                [(3, 4, 5, 6, 3, 4),
                 (4, 3, 5, 4, 6, 4),
                 (5, 6, 3, 5, 4, 5)],
                groups=("purple",))),
            model_solution=LESSON_PIPELINES["groupby-1"],
            pitfalls=("desc-misplaced",),
        ),
        Exercise(
            id="summary-1",
            prompt="Produce a one-row summary holding the largest red, the "
                   "largest blue, and the smallest orange.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _summary_frame(
                [("max(red)", (5,)), ("max(blue)", (6,)),
                 ("min(orange)", (3,))])),
            model_solution=LESSON_PIPELINES["summary-1"],
        ),
        Exercise(
            id="summary-2",
            prompt="For each value of blue, report the smallest red and the "
                   "largest green.",
            start_frame=f1,
            expected=ExpectedResult(UP_TO_ROW_ORDER, _summary_frame(
                [("blue", (3, 4, 6)), ("min(red)", (3, 5, 4)),
                 ("max(green)", (6, 5, 4))])),
            model_solution=LESSON_PIPELINES["summary-2"],
        ),
        Exercise(
            id="combined-1",
            prompt="Keep the rows where blue is greater than 3, reduce to "
                   "red, yellow, and blue, then add a green column equal to "
                   "blue minus 1.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _frame(
                ("red", "yellow", "blue", "green"),
                [(4, 5, 6, 5), (5, 3, 4, 3)])),
            model_solution=LESSON_PIPELINES["combined-1"],
            pitfalls=("and-or-swap", "assign-vs-compare"),
        ),
        Exercise(
            id="combined-2",
            prompt="Keep the rows where blue is greater than 4, then report "
                   "the largest blue.",
            start_frame=f1,
            expected=ExpectedResult(EXACT_FRAME, _summary_frame(
                [("max(blue)", (6,))])),
            model_solution=LESSON_PIPELINES["combined-2"],
            pitfalls=("and-or-swap", "assign-vs-compare"),
        ),
    ]


def exercise_by_id(exercise_id: str,
                   bank: Optional[Sequence[Exercise]] = None) -> Exercise:
    for ex in (bank if bank is not None else builtin_exercises()):
        if ex.id == exercise_id:
            return ex
    raise KeyError(exercise_id)


# ---------------------------------------------------------------------------
# file format (instructor-authored exercise sets)

def _plain_cells(cells: Sequence[Cell]) -> list:
    return ["NA" if is_na(v) else v for v in cells]


def _frame_to_plain(frame: CubeFrame) -> dict:
    obj: dict = {"columns": [{"name": n, "cells": _plain_cells(c)}
                             for n, c in frame.columns]}
    if frame.groups:
        obj["groups"] = list(frame.groups)
    if frame.summary:
        obj["summary_flag"] = True
    return obj


def _frame_from_plain(obj: dict) -> CubeFrame:
    pairs = []
    for col in obj["columns"]:
        cells = tuple(NA if v == "NA" or v is None else v
                      for v in col["cells"])
        pairs.append((col["name"], cells))
    nrows = len(pairs[0][1]) if pairs else 0
    return frame_from_columns(pairs, nrows=nrows,
                              groups=tuple(obj.get("groups") or ()),
                              summary=bool(obj.get("summary_flag", False)))


def exercise_to_json(exercise: Exercise) -> dict:
    expected: dict = {"mode": exercise.expected.mode}
    if exercise.expected.mode == SCALAR_ANSWERS:
        expected["answers"] = list(exercise.expected.payload)
    else:
        expected["frame"] = _frame_to_plain(exercise.expected.payload)
    return {
        "id": exercise.id,
        "prompt": exercise.prompt,
        "start_frame": _frame_to_plain(exercise.start_frame),
        "expected": expected,
        "model_solution": exercise.model_solution,
        "pitfalls": list(exercise.pitfalls),
    }


def exercise_from_json(obj: dict) -> Exercise:
    expected_obj = obj["expected"]
    mode = expected_obj["mode"]
    if mode == SCALAR_ANSWERS:
        expected = ExpectedResult(mode, tuple(expected_obj["answers"]))
    else:
        expected = ExpectedResult(mode, _frame_from_plain(expected_obj["frame"]))
    return Exercise(
        id=obj["id"],
        prompt=obj["prompt"],
        start_frame=_frame_from_plain(obj["start_frame"]),
        expected=expected,
        model_solution=obj["model_solution"],
        pitfalls=tuple(obj.get("pitfalls") or ()),
    )


def load_exercise_file(path: str) -> list[Exercise]:
    """Read one exercise or a list of exercises from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        return [exercise_from_json(item) for item in data]
    return [exercise_from_json(data)]
