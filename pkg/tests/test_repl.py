"""Scripted sessions against the interactive loop.

Each test feeds a fixed stdin transcript through Repl.interact (or calls
Repl.handle directly) and asserts on the printed output. Color stays off so
the assertions read plainly.
"""

import io

from cubeframes.fixtures import figure1
from cubeframes.frameio import load_frame
from cubeframes.model import NA, make_frame
from cubeframes.repl import CONTINUATION, PROMPT, Repl, run_repl


def run_session(script: str, frame=None) -> str:
    repl = Repl(frame, color=False)
    out = io.StringIO()
    repl.interact(io.StringIO(script), out)
    return out.getvalue()


def small_frame():
    return make_frame(
        ["red", "blue"],
        [
            [3, 10],
            [5, 2],
            [4, 7],
        ],
    )


# -- prompts and the loop ------------------------------------------------------


def test_session_opens_with_frame_and_prompt():
    output = run_session(":quit\n", frame=small_frame())
    assert output.startswith("red  blue\n")
    assert PROMPT in output


def test_quit_ends_loop():
    output = run_session(":quit\nfilter(red > 3)\n", frame=small_frame())
    assert "|> filter" not in output


def test_eof_ends_loop():
    output = run_session("", frame=small_frame())
    assert output.endswith(PROMPT + "\n")


def test_trailing_pipe_continues_onto_next_line():
    script = "data |>\nfilter(red > 3)\n:quit\n"
    output = run_session(script, frame=small_frame())
    assert CONTINUATION in output
    assert "|> filter(red > 3)" in output


def test_open_paren_continues_onto_next_line():
    script = "filter(red > 3,\nblue > 5)\n:quit\n"
    output = run_session(script, frame=small_frame())
    assert CONTINUATION in output
    assert "|> filter(red > 3, blue > 5)" in output


# -- pipelines -----------------------------------------------------------------


def test_pipeline_prints_stage_frame_and_annotation():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle("filter(red > 3)", out)
    text = out.getvalue()
    assert "|> filter(red > 3)" in text
    assert "rows kept: 2,3" in text
    assert repl.current.column("red") == (5, 4)


def test_bare_data_prefix_is_optional():
    repl = Repl(small_frame(), color=False)
    explicit, implicit = io.StringIO(), io.StringIO()
    repl.handle("data |> select(red)", explicit)
    repl2 = Repl(small_frame(), color=False)
    repl2.handle("select(red)", implicit)
    assert explicit.getvalue() == implicit.getvalue()
    assert repl.current == repl2.current


def test_multi_stage_pipeline_prints_each_stage():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle("filter(red > 3) |> arrange(desc(blue))", out)
    text = out.getvalue()
    assert "|> filter(red > 3)" in text
    assert "|> arrange(desc(blue))" in text
    assert text.index("|> filter") < text.index("|> arrange")
    assert repl.current.column("blue") == (7, 2)


def test_results_commit_across_lines():
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    repl.handle("filter(blue > 5)", io.StringIO())
    assert repl.current.column("red") == (4,)


def test_dropped_row_annotation():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle("filter(red != 5)", out)
    assert "dropped row 2" in out.getvalue()


def test_notes_are_printed():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle("select(red, red)", out)
    assert "note: duplicate column 'red' in select" in out.getvalue()


def test_bare_data_renders_current_frame():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle("data", out)
    text = out.getvalue()
    assert "red  blue" in text
    assert "|>" not in text


def test_parse_error_prints_caret_and_keeps_frame():
    repl = Repl(small_frame(), color=False)
    before = repl.current
    out = io.StringIO()
    repl.handle("data |> fliter(red > 3)", out)
    text = out.getvalue()
    assert "fliter" in text
    assert "^" in text
    assert "filter" in text  # the suggestion
    assert repl.current is before
    assert repl.undo_stack == []


def test_eval_error_prints_hint_and_keeps_frame():
    repl = Repl(small_frame(), color=False)
    before = repl.current
    out = io.StringIO()
    repl.handle("filter(red + 1)", out)
    text = out.getvalue()
    assert "comparison expected" in text
    assert repl.current is before


# -- meta commands ---------------------------------------------------------------


def test_undo_restores_previous_frame():
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    out = io.StringIO()
    repl.handle(":undo", out)
    assert repl.current == small_frame()
    assert "red  blue" in out.getvalue()


def test_undo_with_empty_stack():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle(":undo", out)
    assert "nothing to undo" in out.getvalue()


def test_undo_twice_walks_back_two_pipelines():
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    repl.handle("select(red)", io.StringIO())
    repl.handle(":undo", io.StringIO())
    assert repl.current.names == ("red", "blue")
    repl.handle(":undo", io.StringIO())
    assert repl.current == small_frame()


def test_reset_restores_initial_frame():
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    repl.handle("select(red)", io.StringIO())
    repl.handle(":reset", io.StringIO())
    assert repl.current == small_frame()


def test_reset_is_undoable():
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    repl.handle(":reset", io.StringIO())
    repl.handle(":undo", io.StringIO())
    assert repl.current.column("red") == (5, 4)


def test_load_replaces_session(tmp_path):
    path = tmp_path / "next.csv"
    path.write_text("a,b\n1,2\n3,NA\n")
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    out = io.StringIO()
    repl.handle(f":load {path}", out)
    assert repl.current.names == ("a", "b")
    assert repl.current.column("b") == (2, NA)
    assert repl.undo_stack == []
    out2 = io.StringIO()
    repl.handle(":undo", out2)
    assert "nothing to undo" in out2.getvalue()


def test_load_missing_file_reports_and_keeps_frame():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle(":load /no/such/file.csv", out)
    assert "cannot load /no/such/file.csv" in out.getvalue()
    assert repl.current == small_frame()


def test_save_csv_and_json(tmp_path):
    csv_path = tmp_path / "out.csv"
    json_path = tmp_path / "out.json"
    repl = Repl(small_frame(), color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    out = io.StringIO()
    repl.handle(f":save {csv_path}", out)
    repl.handle(f":save {json_path}", out)
    assert f"saved {csv_path}" in out.getvalue()
    assert load_frame(str(csv_path)) == repl.current
    assert load_frame(str(json_path)) == repl.current


def test_save_to_bad_path_reports():
    repl = Repl(small_frame(), color=False)
    out = io.StringIO()
    repl.handle(":save /no/such/dir/out.csv", out)
    assert "cannot save" in out.getvalue()


def test_exercises_lists_ids_and_prompts():
    repl = Repl(color=False)
    out = io.StringIO()
    repl.handle(":exercises", out)
    text = out.getvalue()
    assert "filter-1" in text
    assert "warmup-dims" in text


def test_check_before_any_pipeline():
    repl = Repl(color=False)
    out = io.StringIO()
    repl.handle(":check filter-1", out)
    assert "run a pipeline first" in out.getvalue()


def test_check_unknown_exercise():
    repl = Repl(color=False)
    repl.handle("filter(red > 3)", io.StringIO())
    out = io.StringIO()
    repl.handle(":check no-such-id", out)
    assert "no exercise named 'no-such-id'" in out.getvalue()


def test_check_grades_last_pipeline():
    repl = Repl(figure1(), color=False)
    repl.handle("filter(red == 3 | green > 4)", io.StringIO())
    out = io.StringIO()
    repl.handle(":check filter-1", out)
    assert out.getvalue().startswith("correct")


def test_check_incorrect_shows_pitfall_hint():
    repl = Repl(figure1(), color=False)
    repl.handle("filter(red == 3 & green > 4)", io.StringIO())
    out = io.StringIO()
    repl.handle(":check filter-1", out)
    text = out.getvalue()
    assert text.startswith("incorrect")
    assert "hint:" in text
    assert "either" in text


def test_help_lists_meta_commands():
    repl = Repl(color=False)
    out = io.StringIO()
    repl.handle(":help", out)
    text = out.getvalue()
    for command in (":undo", ":reset", ":load", ":save", ":check", ":quit"):
        assert command in text


def test_unknown_meta_command():
    repl = Repl(color=False)
    out = io.StringIO()
    repl.handle(":frobnicate", out)
    assert "unknown command :frobnicate" in out.getvalue()


def test_blank_input_is_ignored():
    repl = Repl(color=False)
    out = io.StringIO()
    assert repl.handle("   ", out) is True
    assert out.getvalue() == ""


# -- run_repl entry point --------------------------------------------------------


def test_run_repl_loads_path_and_returns_zero(tmp_path):
    path = tmp_path / "start.csv"
    path.write_text("x\n1\n2\n")
    out = io.StringIO()
    code = run_repl(str(path), color=False,
                    stdin=io.StringIO(":quit\n"), stdout=out)
    assert code == 0
    assert out.getvalue().lstrip().startswith("x\n")
