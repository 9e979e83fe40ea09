"""Error types shared by the frame model, the language front end, and the engine.

Source-level errors (lexing, parsing, evaluation) carry a character ``span``
into the offending source text so callers can underline it.  ``code`` is a
stable machine-readable tag used by the grader's pitfall rules.
"""

from __future__ import annotations

from typing import Optional, Tuple

Span = Tuple[int, int]


class CubesError(Exception):
    """Base class for every error raised on purpose by this package."""


# ---------------------------------------------------------------------------
# frame construction

class FrameError(CubesError):
    pass


class RaggedRows(FrameError):
    pass


class DuplicateColumn(FrameError):
    pass


class InvalidName(FrameError):
    pass


class InvalidCell(FrameError):
    pass


class InconsistentProvenance(FrameError):
    pass


# ---------------------------------------------------------------------------
# source-text errors

class SourceError(CubesError):
    def __init__(self, message: str, span: Optional[Span] = None,
                 hint: Optional[str] = None, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.span = span
        self.hint = hint
        self.code = code


class LexError(SourceError):
    pass


class ParseError(SourceError):
    def __init__(self, message: str, span: Optional[Span] = None,
                 expected: Optional[str] = None, found: Optional[str] = None,
                 hint: Optional[str] = None, code: Optional[str] = None):
        super().__init__(message, span=span, hint=hint, code=code)
        self.expected = expected
        self.found = found


class UnknownVerb(ParseError):
    def __init__(self, name: str, span: Optional[Span] = None,
                 suggestion: Optional[str] = None):
        hint = f"did you mean {suggestion}?" if suggestion else None
        super().__init__(f"unknown verb {name!r}", span=span,
                         expected="a verb (filter, select, mutate, arrange, group_by, summarize)",
                         found=name, hint=hint, code="unknown-verb")
        self.name = name
        self.suggestion = suggestion


class MixedSelectSigns(ParseError):
    def __init__(self, span: Optional[Span] = None):
        super().__init__(
            "select arguments must be all names to keep or all -names to drop, not a mix",
            span=span, code="mixed-select-signs")


# ---------------------------------------------------------------------------
# evaluation errors
#
# ``stage_index`` is filled in by the pipeline driver so callers can tell
# which verb failed.

class EvalError(SourceError):
    def __init__(self, message: str, span: Optional[Span] = None,
                 hint: Optional[str] = None, code: Optional[str] = None):
        super().__init__(message, span=span, hint=hint, code=code)
        self.stage_index: Optional[int] = None


class UnknownColumn(EvalError):
    def __init__(self, name: str, nearest: Optional[str] = None,
                 span: Optional[Span] = None):
        hint = f"did you mean {nearest}?" if nearest else None
        super().__init__(f"unknown column {name!r}", span=span, hint=hint,
                         code="unknown-column")
        self.name = name
        self.nearest = nearest


class UnknownFunction(EvalError):
    def __init__(self, name: str, nearest: Optional[str] = None,
                 span: Optional[Span] = None):
        hint = f"did you mean {nearest}?" if nearest else None
        super().__init__(f"unknown function {name!r}", span=span, hint=hint,
                         code="unknown-function")
        self.name = name
        self.nearest = nearest


class TypeMismatch(EvalError):
    pass


class LengthMismatch(EvalError):
    def __init__(self, expected: int, got: int, span: Optional[Span] = None):
        super().__init__(
            f"length mismatch: expected {expected} value(s), got {got}",
            span=span, code="length-mismatch")
        self.expected = expected
        self.got = got


class NonScalarSummary(EvalError):
    pass


class ProbsOutOfRange(EvalError):
    pass


class SelectDropsGroupKey(EvalError):
    pass


class DescOutsideArrange(EvalError):
    def __init__(self, span: Optional[Span] = None):
        super().__init__("desc() only sets a sort direction inside arrange()",
                         span=span, code="desc-misplaced")


def format_source_error(source: str, err: SourceError) -> str:
    """Render an error with a caret line pointing at its span.

    Works on multi-line sources; the caret line is placed under the line
    containing the span start.
    """
    lines = [str(err)]
    if err.span is not None and source:
        start, end = err.span
        start = max(0, min(start, len(source)))
        line_start = source.rfind("\n", 0, start) + 1
        line_end = source.find("\n", start)
        if line_end == -1:
            line_end = len(source)
        line = source[line_start:line_end]
        col = start - line_start
        width = max(1, min(end, line_end) - start)
        lines.append("  " + line)
        lines.append("  " + " " * col + "^" * width)
    if err.hint:
        lines.append(f"hint: {err.hint}")
    return "\n".join(lines)
