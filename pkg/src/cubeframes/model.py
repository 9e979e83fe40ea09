"""The cube-grid data model.

A :class:`CubeFrame` is a small rectangular table: each row is one
observation, each column is a named variable, and every cell holds either a
decimal number or the missing marker :data:`NA`.  Cells valued 3..6 are
displayed as shape glyphs (triangle, square, pentagon, hexagon); everything
else renders as a plain numeral.

Frames are immutable values: every operation builds a new frame, so frames
can be shared freely across threads and sessions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import (
    DuplicateColumn,
    InconsistentProvenance,
    InvalidCell,
    InvalidName,
    RaggedRows,
)


class NAType:
    """The missing-value marker.  A singleton: test with ``x is NA``."""

    _instance: Optional["NAType"] = None

    def __new__(cls) -> "NAType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NA"

    def __bool__(self) -> bool:
        # Catches accidental `if cell:` checks; missing is neither true nor false.
        raise TypeError("NA has no truth value; test with `x is NA`")

    def __copy__(self) -> "NAType":
        return self

    def __deepcopy__(self, memo: dict) -> "NAType":
        return self


NA = NAType()

Cell = Union[int, float, NAType]

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.]*$")

GLYPH_NAMES = {3: "triangle", 4: "square", 5: "pentagon", 6: "hexagon"}


def is_na(v: Cell) -> bool:
    return v is NA


def cells_equal(a: Cell, b: Cell) -> bool:
    """Cell equality for frame comparison: NA matches NA, numbers compare by value."""
    if a is NA or b is NA:
        return a is NA and b is NA
    return a == b


def format_cell(v: Cell) -> str:
    if v is NA:
        return "NA"
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


@dataclass(frozen=True)
class ShapeGlyph:
    """Display mapping of one cell: a shape name, or ``numeral`` with its text."""

    glyph: str  # triangle | square | pentagon | hexagon | numeral
    text: str


def shape_for(v: Cell) -> ShapeGlyph:
    """Map a cell to its glyph: integer 3/4/5/6 -> shape, anything else -> numeral."""
    if v is not NA and not isinstance(v, bool) and isinstance(v, (int, float)):
        f = float(v)
        if f.is_integer() and int(f) in GLYPH_NAMES:
            return ShapeGlyph(GLYPH_NAMES[int(f)], format_cell(v))
    return ShapeGlyph("numeral", format_cell(v))


def check_cell(v: Cell) -> Cell:
    if v is NA:
        return v
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidCell(f"cells hold numbers or NA, not {v!r}")
    if not math.isfinite(v):
        raise InvalidCell(f"cells must be finite numbers, not {v!r}")
    return v


@dataclass(frozen=True, eq=False)
class CubeFrame:
    """A rectangular grid of cells with ordered, named columns.

    ``groups`` registers grouping keys without touching the cells.  ``summary``
    marks frames produced by summarize so renderers can use the reserved
    summary color.

    Equality compares column names and cell values only (NA equals NA);
    grouping and the summary flag are display/registration metadata and are
    compared explicitly where they matter.
    """

    columns: tuple[tuple[str, tuple[Cell, ...]], ...]
    nrows: int
    groups: tuple[str, ...] = ()
    summary: bool = False

    def __post_init__(self) -> None:
        seen = set()
        for name, cells in self.columns:
            if not name:
                raise InvalidName("column names must be non-empty")
            if name in seen:
                raise DuplicateColumn(f"duplicate column {name!r}")
            seen.add(name)
            if len(cells) != self.nrows:
                raise RaggedRows(
                    f"column {name!r} has {len(cells)} cells, expected {self.nrows}")
        gseen = set()
        for key in self.groups:
            if key not in seen:
                raise InvalidName(f"group key {key!r} is not a column")
            if key in gseen:
                raise DuplicateColumn(f"duplicate group key {key!r}")
            gseen.add(key)

    # -- shape ---------------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.columns)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def has_column(self, name: str) -> bool:
        return any(n == name for n, _ in self.columns)

    def column(self, name: str) -> tuple[Cell, ...]:
        for n, cells in self.columns:
            if n == name:
                return cells
        raise KeyError(name)

    def cell(self, row: int, name: str) -> Cell:
        return self.column(name)[row]

    def row(self, i: int) -> tuple[Cell, ...]:
        return tuple(cells[i] for _, cells in self.columns)

    def rows(self) -> Iterator[tuple[Cell, ...]]:
        for i in range(self.nrows):
            yield self.row(i)

    # -- derived frames --------------------------------------------------------

    def with_groups(self, keys: Sequence[str]) -> "CubeFrame":
        return CubeFrame(self.columns, self.nrows, tuple(keys), self.summary)

    def ungrouped(self) -> "CubeFrame":
        return CubeFrame(self.columns, self.nrows, (), self.summary)

    def with_summary_flag(self, flag: bool = True) -> "CubeFrame":
        return CubeFrame(self.columns, self.nrows, self.groups, flag)

    def take_rows(self, indices: Sequence[int]) -> "CubeFrame":
        cols = tuple((name, tuple(cells[i] for i in indices))
                     for name, cells in self.columns)
        return CubeFrame(cols, len(indices), self.groups, self.summary)

    # -- equality ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeFrame):
            return NotImplemented
        if self.names != other.names or self.nrows != other.nrows:
            return False
        for (_, a), (_, b) in zip(self.columns, other.columns):
            if not all(cells_equal(x, y) for x, y in zip(a, b)):
                return False
        return True

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        dims = f"{self.nrows}x{self.ncols}"
        extra = f" groups={list(self.groups)}" if self.groups else ""
        flag = " summary" if self.summary else ""
        return f"<CubeFrame {dims} [{', '.join(self.names)}]{extra}{flag}>"


def make_frame(names: Sequence[str], rows: Iterable[Sequence[Cell]]) -> CubeFrame:
    """Build an ungrouped frame from column names and row-major cells.

    Names must be identifiers (letter first, then letters/digits/underscore/dot)
    and unique; all rows must have exactly one cell per column.
    """
    names = list(names)
    for name in names:
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise InvalidName(
                f"invalid column name {name!r}: use a letter followed by "
                "letters, digits, '_' or '.'")
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise DuplicateColumn(f"duplicate column {dupes[0]!r}")
    rows = [list(r) for r in rows]
    for i, r in enumerate(rows):
        if len(r) != len(names):
            raise RaggedRows(
                f"row {i + 1} has {len(r)} cells, expected {len(names)}")
        for v in r:
            check_cell(v)
    columns = tuple(
        (name, tuple(r[j] for r in rows)) for j, name in enumerate(names))
    return CubeFrame(columns, len(rows))


def frame_from_columns(pairs: Sequence[tuple[str, Sequence[Cell]]],
                       nrows: Optional[int] = None,
                       groups: Sequence[str] = (),
                       summary: bool = False) -> CubeFrame:
    """Build a frame column-major.  Unlike :func:`make_frame` this accepts any
    non-empty unique names (summarize output names like ``max(red)`` are legal
    here)."""
    cols = tuple((name, tuple(cells)) for name, cells in pairs)
    if nrows is None:
        if not cols:
            raise RaggedRows("cannot infer row count of a frame with no columns")
        nrows = len(cols[0][1])
    for _, cells in cols:
        for v in cells:
            check_cell(v)
    return CubeFrame(cols, nrows, tuple(groups), summary)


def dimensions(frame: CubeFrame) -> tuple[int, int]:
    """(number of observations, number of variables)."""
    return frame.nrows, frame.ncols


def distinct_values(frame: CubeFrame) -> set:
    """The set of distinct cell values across the whole frame (NA included if present)."""
    out: set = set()
    for _, cells in frame.columns:
        out.update(cells)
    return out


# ---------------------------------------------------------------------------
# frame diffing

@dataclass(frozen=True)
class FrameDiff:
    """What one verb did to a frame, in student-facing terms.

    Row numbers are 1-based (the way students count cube rows).
    ``row_permutation`` maps each output row to its source row and is present
    only when the verb purely reordered the rows.
    """

    kept_rows: tuple[int, ...] = ()
    dropped_rows: tuple[int, ...] = ()
    added_columns: tuple[str, ...] = ()
    dropped_columns: tuple[str, ...] = ()
    changed_columns: tuple[str, ...] = ()
    row_permutation: Optional[tuple[int, ...]] = None

    def is_empty(self) -> bool:
        return (not self.dropped_rows and not self.added_columns
                and not self.dropped_columns and not self.changed_columns
                and self.row_permutation is None)

    def to_json(self) -> dict:
        return {
            "kept_rows": list(self.kept_rows),
            "dropped_rows": list(self.dropped_rows),
            "added_columns": list(self.added_columns),
            "dropped_columns": list(self.dropped_columns),
            "changed_columns": list(self.changed_columns),
            "row_permutation": (None if self.row_permutation is None
                                else list(self.row_permutation)),
        }


def diff_frames(before: CubeFrame, after: CubeFrame,
                row_origins: Sequence[Optional[int]]) -> FrameDiff:
    """Diff two frames given per-output-row lineage.

    ``row_origins[i]`` is the 0-based source row that output row ``i`` came
    from, or None for synthesized rows (summary rows).  Each source row may
    feed at most one output row.
    """
    if len(row_origins) != after.nrows:
        raise InconsistentProvenance(
            f"{len(row_origins)} row origins for {after.nrows} output rows")
    seen: set[int] = set()
    for o in row_origins:
        if o is None:
            continue
        if not 0 <= o < before.nrows:
            raise InconsistentProvenance(f"row origin {o} out of range")
        if o in seen:
            raise InconsistentProvenance(f"source row {o} mapped twice")
        seen.add(o)

    kept = tuple(sorted(o + 1 for o in seen))
    dropped = tuple(i + 1 for i in range(before.nrows) if i not in seen)

    before_names = set(before.names)
    after_names = set(after.names)
    added = tuple(n for n in after.names if n not in before_names)
    dropped_cols = tuple(n for n in before.names if n not in after_names)

    common = [n for n in after.names if n in before_names]
    changed = []
    for name in common:
        bcells = before.column(name)
        acells = after.column(name)
        for i, o in enumerate(row_origins):
            if o is not None and not cells_equal(bcells[o], acells[i]):
                changed.append(name)
                break
    perm: Optional[tuple[int, ...]] = None
    if (all(o is not None for o in row_origins)
            and len(seen) == before.nrows
            and list(row_origins) != list(range(before.nrows))):
        perm = tuple(o + 1 for o in row_origins)  # type: ignore[union-attr]
    return FrameDiff(kept, dropped, added, dropped_cols, tuple(changed), perm)
