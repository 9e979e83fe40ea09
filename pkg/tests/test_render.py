"""Terminal rendering: cube grids, tables, colors, and diff annotations."""

from __future__ import annotations

import pytest

from cubeframes.fixtures import figure1
from cubeframes.model import NA, diff_frames, make_frame
from cubeframes.render import (COLUMN_COLORS, SUMMARY_COLOR, RenderOptions,
                               diff_annotations, render_frame)


def plain(frame, **kw):
    return render_frame(frame, RenderOptions(color=False, **kw))


def test_options_validate_mode_and_width():
    with pytest.raises(ValueError):
        RenderOptions(mode="sideways")
    with pytest.raises(ValueError):
        RenderOptions(mode="ascii_cubes", width=10)
    RenderOptions(mode="table", width=10)  # tables have no minimum


def test_table_mode_right_justifies_cells():
    frame = make_frame(["red", "blue"], [[3, 10], [NA, 2]])
    lines = render_frame(frame, RenderOptions(mode="table")).splitlines()
    assert lines[0] == "red  blue"
    assert lines[1] == "  3    10"
    assert lines[2] == " NA     2"


def test_cube_mode_uses_shape_letters_without_color():
    frame = make_frame(["red", "blue"], [[3, 4], [5, 6]])
    lines = plain(frame).splitlines()
    assert "T" in lines[1] and "S" in lines[1]
    assert "P" in lines[2] and "H" in lines[2]
    assert "\x1b[" not in "\n".join(lines)


def test_cube_mode_uses_shape_characters_with_color():
    frame = make_frame(["red"], [[3], [4], [5], [6]])
    out = render_frame(frame, RenderOptions(color=True))
    for ch in "▲■⬟⬢":
        assert ch in out
    assert f"\x1b[{COLUMN_COLORS['red']}m" in out


def test_na_renders_as_dashes_and_numbers_as_digits():
    frame = make_frame(["red"], [[NA], [9]])
    out = plain(frame)
    assert "--" in out
    assert "9" in out


def test_each_fixture_column_gets_its_own_color():
    out = render_frame(figure1(), RenderOptions(color=True))
    for name, code in COLUMN_COLORS.items():
        assert f"\x1b[{code}m" in out, name


def test_summary_frames_use_the_reserved_color():
    frame = figure1().with_summary_flag(True)
    out = render_frame(frame, RenderOptions(color=True))
    assert f"\x1b[{SUMMARY_COLOR}m" in out
    for code in COLUMN_COLORS.values():
        assert f"\x1b[{code}m" not in out


def test_summary_color_is_not_a_column_color():
    assert SUMMARY_COLOR not in COLUMN_COLORS.values()


def test_grouped_frames_render_block_labels():
    frame = figure1().with_groups(["purple"])
    lines = plain(frame).splitlines()
    assert "[purple = 4]" in lines
    assert "[purple = 5]" in lines
    # first-appearance order: purple is (4, 4, 5)
    assert lines.index("[purple = 4]") < lines.index("[purple = 5]")


def test_multi_key_group_labels():
    frame = make_frame(["a", "b"], [[1, 2]]).with_groups(["a", "b"])
    out = plain(frame)
    assert "[a = 1, b = 2]" in out


def test_empty_frame_renders_a_placeholder():
    frame = make_frame(["red"], [])
    out = plain(frame)
    assert "(no rows)" in out


def test_header_uses_column_names():
    out = plain(figure1())
    header = out.splitlines()[0]
    for name in figure1().names:
        assert name in header


def test_diff_annotations_for_kept_and_dropped_rows():
    f = figure1()
    out = f.take_rows([0, 2])
    notes = diff_annotations(diff_frames(f, out, (0, 2)))
    assert "rows kept: 1,3" in notes
    assert "dropped row 2" in notes


def test_diff_annotations_for_reorder():
    f = figure1()
    out = f.take_rows([2, 1, 0])
    notes = diff_annotations(diff_frames(f, out, (2, 1, 0)))
    assert notes == ["rows reordered: 3,2,1"]


def test_diff_annotations_for_columns():
    f = figure1()
    pruned = make_frame(["red"], [[3], [4], [5]])
    notes = diff_annotations(diff_frames(f, pruned, (0, 1, 2)))
    assert "dropped column orange" in notes
    assert all(not n.startswith("added") for n in notes)
