"""cubeframes: a classroom data-wrangling engine.

Small data sets are held as immutable grids of numbered cubes (CubeFrame) and
transformed with six pipeline verbs: filter, select, mutate, arrange,
group_by, summarize.  Pipelines are written in a compact shorthand:

    data |> filter(red == 3 | green > 4) |> select(red, green)

The package also ships an exercise bank with grading and pitfall hints, a
terminal REPL, and an HTTP session service for the browser workbench.
"""

from .engine import (StageTrace, apply_arrange, apply_filter, apply_group_by,
                     apply_mutate, apply_select, apply_summarize,
                     eval_expr, eval_pipeline)
from .errors import (CubesError, EvalError, FrameError, LexError, ParseError,
                     SourceError, format_source_error)
from .fixtures import FIXTURES, figure1, fixture
from .lang import (parse_expression, parse_pipeline, pretty_print, tokenize)
from .model import (NA, Cell, CubeFrame, FrameDiff, diff_frames, dimensions,
                    distinct_values, frame_from_columns, is_na, make_frame)

__version__ = "0.1.0"

__all__ = [
    "NA",
    "Cell",
    "CubeFrame",
    "CubesError",
    "EvalError",
    "FIXTURES",
    "FrameDiff",
    "FrameError",
    "LexError",
    "ParseError",
    "SourceError",
    "StageTrace",
    "apply_arrange",
    "apply_filter",
    "apply_group_by",
    "apply_mutate",
    "apply_select",
    "apply_summarize",
    "diff_frames",
    "dimensions",
    "distinct_values",
    "eval_expr",
    "eval_pipeline",
    "figure1",
    "fixture",
    "format_source_error",
    "frame_from_columns",
    "is_na",
    "make_frame",
    "parse_expression",
    "parse_pipeline",
    "pretty_print",
    "tokenize",
    "__version__",
]
