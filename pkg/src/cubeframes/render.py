"""Terminal rendering: the cube-grid view and plain tables.

Cells named 3 to 6 draw as the four cube shapes, colored by column name:

    value:  3  4  5  6      other numbers print as digits, NA as "--"
    glyph:  ▲  ■  ⬟  ⬢      (letters T S P H with --no-color)

Summary frames draw every cube in the reserved summary color so aggregate
rows are visually distinct from data rows.  Grouped frames draw one block of
rows per group with a key label between blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Cell, CubeFrame, FrameDiff, format_cell, is_na, shape_for

GLYPH_CHARS = {"triangle": "▲", "square": "■", "pentagon": "⬟", "hexagon": "⬢"}
GLYPH_LETTERS = {"triangle": "T", "square": "S", "pentagon": "P", "hexagon": "H"}

# ANSI foreground per column name; anything unlisted cycles the palette.
COLUMN_COLORS = {
    "red": "31",
    "orange": "38;5;208",
    "yellow": "33",
    "green": "32",
    "blue": "34",
    "purple": "35",
}
FALLBACK_COLORS = ("36", "37", "91", "92", "93", "94", "95", "96")
SUMMARY_COLOR = "96"  # reserved: never used for the six column names above


@dataclass(frozen=True)
class RenderOptions:
    mode: str = "ascii_cubes"  # ascii_cubes | table
    color: bool = True
    width: int = 80

    def __post_init__(self) -> None:
        if self.mode not in ("ascii_cubes", "table"):
            raise ValueError(f"unknown render mode {self.mode!r}")
        if self.mode == "ascii_cubes" and self.width < 20:
            raise ValueError("ascii_cubes needs width >= 20")


def _column_color(name: str, index: int) -> str:
    if name in COLUMN_COLORS:
        return COLUMN_COLORS[name]
    return FALLBACK_COLORS[index % len(FALLBACK_COLORS)]


def _paint(text: str, color_code: str, enabled: bool) -> str:
    if not enabled:
        return text
    return f"\x1b[{color_code}m{text}\x1b[0m"


def _cell_text(v: Cell, letters: bool) -> str:
    if is_na(v):
        return "--"
    shape = shape_for(v)
    if shape.glyph == "numeral":
        return shape.text
    return GLYPH_LETTERS[shape.glyph] if letters else GLYPH_CHARS[shape.glyph]


def render_frame(frame: CubeFrame, options: RenderOptions = RenderOptions()) -> str:
    if options.mode == "table":
        return _render_table(frame)
    return _render_cubes(frame, options)


def _render_table(frame: CubeFrame) -> str:
    widths = [max(len(name), *(len(format_cell(v)) for v in cells), 1)
              if cells else len(name)
              for name, cells in frame.columns]
    lines = ["  ".join(name.rjust(w) for (name, _), w in zip(frame.columns, widths))]
    for row in frame.rows():
        lines.append("  ".join(format_cell(v).rjust(w)
                               for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def _group_blocks(frame: CubeFrame) -> list[tuple[str, list[int]]]:
    """(label, row indices) per display block; one unlabeled block if ungrouped."""
    if not frame.groups:
        return [("", list(range(frame.nrows)))]
    key_columns = [frame.column(k) for k in frame.groups]
    blocks: dict[tuple, list[int]] = {}
    for i in range(frame.nrows):
        blocks.setdefault(tuple(col[i] for col in key_columns), []).append(i)
    out = []
    for key in blocks:  # first-appearance order: cells were not reordered
        label = ", ".join(f"{name} = {format_cell(v)}"
                          for name, v in zip(frame.groups, key))
        out.append((f"[{label}]", blocks[key]))
    return out


def _render_cubes(frame: CubeFrame, options: RenderOptions) -> str:
    cell_width = max([4] + [len(name) for name in frame.names])
    colors = [SUMMARY_COLOR if frame.summary else _column_color(name, i)
              for i, name in enumerate(frame.names)]
    lines = []
    header = " ".join(
        _paint(name.center(cell_width), color, options.color)
        for name, color in zip(frame.names, colors))
    lines.append(header.rstrip())
    for label, rows in _group_blocks(frame):
        if label:
            lines.append(label)
        for i in rows:
            line = " ".join(
                _paint(_cell_text(v, letters=not options.color).center(cell_width),
                       color, options.color)
                for v, color in zip(frame.row(i), colors))
            lines.append(line.rstrip())
    if frame.nrows == 0:
        lines.append("(no rows)")
    return "\n".join(lines) + "\n"


def diff_annotations(diff: FrameDiff) -> list[str]:
    """Student-facing one-liners describing what a verb changed."""
    notes = []
    if diff.dropped_rows:
        if diff.kept_rows:
            notes.append("rows kept: " + ",".join(str(i) for i in diff.kept_rows))
        for i in diff.dropped_rows:
            notes.append(f"dropped row {i}")
    if diff.row_permutation is not None:
        notes.append("rows reordered: "
                     + ",".join(str(i) for i in diff.row_permutation))
    for name in diff.dropped_columns:
        notes.append(f"dropped column {name}")
    for name in diff.added_columns:
        notes.append(f"added column {name}")
    for name in diff.changed_columns:
        notes.append(f"changed column {name}")
    return notes
