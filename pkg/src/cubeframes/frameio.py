"""Frame serialization: CSV files, wire-format JSON, and files thereof.

CSV: header row of column names, then one line per row; missing cells are the
literal ``NA``.  JSON uses the wire format the service and workbench speak:

    {"columns": [{"name": ..., "cells": [{"value": 3, "glyph": "triangle"},
                                         {"value": "NA", "glyph": "na"}]}],
     "groups": [...], "summary_flag": false, "nrows": N}

Both round-trip losslessly (cell values, column order, groups, summary flag).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Union

from .errors import InvalidCell, RaggedRows
from .model import NA, Cell, CubeFrame, format_cell, frame_from_columns, is_na, shape_for


def _parse_cell(text: str, row: int, column: str) -> Cell:
    text = text.strip()
    if text == "NA":
        return NA
    try:
        return float(text) if ("." in text or "e" in text or "E" in text) else int(text)
    except ValueError:
        raise InvalidCell(
            f"row {row}, column {column}: {text!r} is not a number "
            "(use NA for missing)") from None


# -- CSV ---------------------------------------------------------------------

def frame_to_csv(frame: CubeFrame) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(frame.names)
    for row in frame.rows():
        writer.writerow([format_cell(v) for v in row])
    return out.getvalue()


def frame_from_csv(text: str) -> CubeFrame:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise RaggedRows("CSV needs a header row of column names")
    names = [name.strip() for name in rows[0]]
    parsed = []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != len(names):
            raise RaggedRows(
                f"row {i} has {len(row)} cells, expected {len(names)}")
        parsed.append([_parse_cell(cell, i, names[j])
                       for j, cell in enumerate(row)])
    columns = [(name, tuple(r[j] for r in parsed))
               for j, name in enumerate(names)]
    return frame_from_columns(columns, nrows=len(parsed))


def load_csv(path: str) -> CubeFrame:
    with open(path, encoding="utf-8") as fh:
        return frame_from_csv(fh.read())


def save_csv(frame: CubeFrame, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(frame_to_csv(frame))


# -- wire JSON ----------------------------------------------------------------

def cell_to_wire(v: Cell) -> dict:
    if is_na(v):
        return {"value": "NA", "glyph": "na"}
    shape = shape_for(v)
    return {"value": v, "glyph": shape.glyph}


def cell_from_wire(obj: Union[dict, int, float, str]) -> Cell:
    value = obj.get("value") if isinstance(obj, dict) else obj
    if value == "NA" or value is None:
        return NA
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidCell(f"cell value must be a number or \"NA\", got {value!r}")
    return value


def frame_to_wire(frame: CubeFrame) -> dict:
    return {
        "columns": [{"name": name, "cells": [cell_to_wire(v) for v in cells]}
                    for name, cells in frame.columns],
        "groups": list(frame.groups),
        "summary_flag": frame.summary,
        "nrows": frame.nrows,
    }


def frame_from_wire(obj: dict) -> CubeFrame:
    if not isinstance(obj, dict) or not isinstance(obj.get("columns"), list):
        raise InvalidCell("frame JSON needs a \"columns\" list")
    pairs = []
    for col in obj["columns"]:
        if not isinstance(col, dict) or "name" not in col:
            raise InvalidCell("each column needs a \"name\" and \"cells\"")
        cells = col.get("cells", [])
        if not isinstance(cells, list):
            raise InvalidCell(f"column {col['name']!r}: \"cells\" must be a list")
        pairs.append((str(col["name"]), tuple(cell_from_wire(c) for c in cells)))
    nrows = obj.get("nrows")
    if nrows is None:
        nrows = len(pairs[0][1]) if pairs else 0
    return frame_from_columns(pairs, nrows=nrows,
                              groups=tuple(obj.get("groups") or ()),
                              summary=bool(obj.get("summary_flag", False)))


def frame_to_json(frame: CubeFrame) -> str:
    return json.dumps(frame_to_wire(frame), indent=2) + "\n"


def frame_from_json(text: str) -> CubeFrame:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidCell(f"not valid JSON: {err}") from None
    return frame_from_wire(obj)


def load_json(path: str) -> CubeFrame:
    with open(path, encoding="utf-8") as fh:
        return frame_from_json(fh.read())


def save_json(frame: CubeFrame, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(frame_to_json(frame))


def load_frame(path: str) -> CubeFrame:
    """Load a frame by file extension: .csv or .json."""
    if path.endswith(".json"):
        return load_json(path)
    return load_csv(path)
