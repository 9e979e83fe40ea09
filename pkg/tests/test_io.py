"""CSV and JSON frame serialization, including the wire cell format."""

from __future__ import annotations

import random

import pytest

from cubeframes.errors import InvalidCell, RaggedRows
from cubeframes.fixtures import figure1
from cubeframes.frameio import (cell_from_wire, cell_to_wire, frame_from_csv,
                                frame_from_json, frame_from_wire,
                                frame_to_csv, frame_to_json, frame_to_wire,
                                load_csv, load_frame, load_json, save_csv,
                                save_json)
from cubeframes.model import NA, is_na, make_frame

from randgen import random_frame


def test_csv_round_trip_of_the_fixture():
    f = figure1()
    text = frame_to_csv(f)
    assert text.splitlines()[0] == "red,orange,yellow,green,blue,purple"
    assert frame_from_csv(text) == f


def test_csv_represents_na_as_the_two_letters():
    f = make_frame(["x", "y"], [[1, NA], [NA, 2]])
    text = frame_to_csv(f)
    assert text.splitlines()[1] == "1,NA"
    back = frame_from_csv(text)
    assert is_na(back.cell(0, "y"))
    assert back == f


def test_csv_keeps_floats_distinct_from_ints():
    f = make_frame(["x"], [[1.5], [2]])
    back = frame_from_csv(frame_to_csv(f))
    assert back.column("x") == (1.5, 2)
    assert isinstance(back.column("x")[1], int)


def test_csv_bad_cell_reports_row_and_column():
    text = "red,yellow\n3,4\n5,apple\n"
    with pytest.raises(InvalidCell) as exc:
        frame_from_csv(text)
    msg = str(exc.value)
    assert "row 2, column yellow" in msg
    assert "NA" in msg


def test_csv_needs_a_header():
    with pytest.raises(RaggedRows):
        frame_from_csv("")


def test_csv_rejects_ragged_rows():
    with pytest.raises(RaggedRows) as exc:
        frame_from_csv("a,b\n1,2\n3\n")
    assert "row 2" in str(exc.value)


def test_csv_strips_cell_whitespace():
    back = frame_from_csv("a,b\n 1 , NA \n")
    assert back.column("a") == (1,)
    assert is_na(back.column("b")[0])


def test_csv_file_round_trip(tmp_path):
    f = figure1()
    path = tmp_path / "frame.csv"
    save_csv(f, str(path))
    assert load_csv(str(path)) == f


def test_random_frames_round_trip_through_csv():
    rng = random.Random(7007)
    for _ in range(100):
        f = random_frame(rng)
        assert frame_from_csv(frame_to_csv(f)) == f


def test_random_frames_round_trip_through_json():
    rng = random.Random(7008)
    for _ in range(100):
        f = random_frame(rng)
        back = frame_from_json(frame_to_json(f))
        assert back == f
        assert back.groups == f.groups
        assert back.summary == f.summary


def test_wire_cells_carry_value_and_glyph():
    assert cell_to_wire(3) == {"value": 3, "glyph": "triangle"}
    assert cell_to_wire(4) == {"value": 4, "glyph": "square"}
    assert cell_to_wire(5) == {"value": 5, "glyph": "pentagon"}
    assert cell_to_wire(6) == {"value": 6, "glyph": "hexagon"}
    assert cell_to_wire(9) == {"value": 9, "glyph": "numeral"}
    assert cell_to_wire(NA) == {"value": "NA", "glyph": "na"}


def test_wire_cells_parse_back_leniently():
    assert cell_from_wire({"value": 5, "glyph": "pentagon"}) == 5
    assert cell_from_wire(5) == 5
    assert is_na(cell_from_wire("NA"))
    assert is_na(cell_from_wire({"value": "NA"}))
    assert is_na(cell_from_wire(None))
    with pytest.raises(InvalidCell):
        cell_from_wire({"value": "five"})
    with pytest.raises(InvalidCell):
        cell_from_wire(True)


def test_frame_wire_shape():
    f = figure1().with_groups(["purple"]).with_summary_flag(True)
    wire = frame_to_wire(f)
    assert wire["nrows"] == 3
    assert wire["groups"] == ["purple"]
    assert wire["summary_flag"] is True
    assert wire["columns"][0]["name"] == "red"
    assert wire["columns"][0]["cells"][0] == {"value": 3, "glyph": "triangle"}
    back = frame_from_wire(wire)
    assert back == f
    assert back.groups == ("purple",)
    assert back.summary


def test_frame_from_wire_validates_shape():
    with pytest.raises(InvalidCell):
        frame_from_wire({"columns": "nope"})
    with pytest.raises(InvalidCell):
        frame_from_wire({"columns": [{"cells": [1]}]})
    with pytest.raises(InvalidCell):
        frame_from_wire({"columns": [{"name": "x", "cells": 3}]})


def test_frame_from_wire_accepts_plain_cell_lists():
    back = frame_from_wire({"columns": [{"name": "x", "cells": [1, "NA", 3]}]})
    assert back.column("x") == (1, NA, 3)
    assert back.nrows == 3


def test_frame_from_json_rejects_garbage():
    with pytest.raises(InvalidCell):
        frame_from_json("{not json")


def test_json_file_round_trip(tmp_path):
    f = figure1().with_groups(["purple"])
    path = tmp_path / "frame.json"
    save_json(f, str(path))
    back = load_json(str(path))
    assert back == f
    assert back.groups == ("purple",)


def test_load_frame_dispatches_on_extension(tmp_path):
    f = figure1()
    csv_path = tmp_path / "frame.csv"
    json_path = tmp_path / "frame.json"
    save_csv(f, str(csv_path))
    save_json(f, str(json_path))
    assert load_frame(str(csv_path)) == f
    assert load_frame(str(json_path)) == f
