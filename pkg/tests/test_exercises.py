"""Exercise bank: grading modes, pitfall diagnostics, JSON round-trips."""

from __future__ import annotations

import json

import pytest

from cubeframes.engine import eval_pipeline
from cubeframes.exercises import (EXACT_FRAME, PITFALL_RULES, SCALAR_ANSWERS,
                                  UP_TO_ROW_ORDER, Exercise, ExpectedResult,
                                  builtin_exercises, exercise_by_id,
                                  exercise_from_json, exercise_to_json, grade,
                                  load_exercise_file)
from cubeframes.lang.parser import parse_pipeline
from cubeframes.model import NA, make_frame


def bank():
    return builtin_exercises()


def test_bank_has_at_least_ten_exercises_with_unique_ids():
    exercises = bank()
    assert len(exercises) >= 10
    ids = [ex.id for ex in exercises]
    assert len(set(ids)) == len(ids)


def test_bank_covers_every_mode():
    modes = {ex.expected.mode for ex in bank()}
    assert modes == {EXACT_FRAME, UP_TO_ROW_ORDER, SCALAR_ANSWERS}


def test_warmups_are_scalar_answer_exercises():
    warmups = [ex for ex in bank() if ex.id.startswith("warmup-")]
    assert len(warmups) >= 3
    assert all(ex.expected.mode == SCALAR_ANSWERS for ex in warmups)


def test_every_model_solution_grades_correct():
    for ex in bank():
        report = grade(ex, ex.model_solution)
        assert report.verdict == "correct", (ex.id, report.error)


def test_expected_frames_match_an_engine_run():
    # the expected payloads are hand-written literals; this cross-checks
    # them against an actual engine evaluation of the model solution
    for ex in bank():
        if ex.expected.mode == SCALAR_ANSWERS:
            continue
        out, _ = eval_pipeline(ex.start_frame, parse_pipeline(ex.model_solution))
        assert out == ex.expected.payload, ex.id


def test_pitfall_registry_names():
    assert set(PITFALL_RULES) == {
        "filter-keeps-columns", "and-or-swap", "assign-vs-compare",
        "desc-misplaced",
    }
    for ex in bank():
        for name in ex.pitfalls:
            assert name in PITFALL_RULES, (ex.id, name)


def test_scalar_grading_is_order_insensitive():
    ex = exercise_by_id("warmup-values")
    assert grade(ex, "3, 4, 5, 6").verdict == "correct"
    assert grade(ex, "6, 5, 4, 3").verdict == "correct"
    assert grade(ex, "3, 4, 5").verdict == "incorrect"
    assert grade(ex, "3, 4, 5, 6, 6").verdict == "incorrect"


def test_scalar_grading_accepts_names():
    ex = exercise_by_id("warmup-names")
    answer = ", ".join(ex.start_frame.names)
    assert grade(ex, answer).verdict == "correct"
    assert grade(ex, "red, blue").verdict == "incorrect"


def test_scalar_grading_handles_floats():
    ex = exercise_by_id("warmup-dims")
    assert grade(ex, "3, 6").verdict == "correct"
    assert grade(ex, "3.0, 6.0").verdict == "correct"
    assert grade(ex, "6, 3").verdict == "correct"  # a multiset of answers


def test_grade_never_raises_on_garbage():
    ex = exercise_by_id("filter-1")
    for junk in ("", "data |>", "data |> fliter(red > 3)",
                 "data |> filter(red %on% 3)", "1 + ", "data |> filter(x > 1)"):
        report = grade(ex, junk)
        assert report.verdict in ("incorrect", "parse_error")


def test_parse_errors_are_reported_with_span():
    ex = exercise_by_id("filter-1")
    report = grade(ex, "data |> fliter(red > 3)")
    assert report.verdict == "parse_error"
    assert report.error is not None
    assert report.error.span == (8, 14)


def test_eval_errors_grade_incorrect_with_the_error_attached():
    ex = exercise_by_id("filter-1")
    report = grade(ex, "data |> filter(missing > 3)")
    assert report.verdict == "incorrect"
    assert report.error is not None


def test_up_to_row_order_mode_ignores_row_order():
    ex = exercise_by_id("filter-1")
    reordered = ex.model_solution + " |> arrange(desc(red))"
    assert grade(ex, reordered).verdict == "correct"


def test_exact_mode_cares_about_row_order():
    ex = exercise_by_id("arrange-1")
    assert ex.expected.mode == EXACT_FRAME
    report = grade(ex, "data |> arrange(desc(red))")
    assert report.verdict == "incorrect"


def test_grading_compares_grouping_when_expected_is_grouped():
    ex = exercise_by_id("groupby-0")
    report = grade(ex, "data")  # right cells, no grouping registered
    assert report.verdict == "incorrect"


def test_filter_keeps_columns_pitfall():
    ex = exercise_by_id("filter-1")
    submission = ("data |> filter(red == 3 | green > 4) "
                  "|> select(red, green)")
    report = grade(ex, submission)
    assert report.verdict == "incorrect"
    assert any("filter changes which rows" in m
               for m in report.triggered_pitfalls)


def test_and_or_swap_pitfall():
    ex = exercise_by_id("filter-1")
    submission = "data |> filter(red == 3 & green > 4)"
    report = grade(ex, submission)
    assert report.verdict == "incorrect"
    assert any("`&` keeps a row" in m for m in report.triggered_pitfalls)


def test_and_or_swap_fires_only_when_the_swap_fixes_it():
    ex = exercise_by_id("filter-1")
    report = grade(ex, "data |> filter(red == 9 & green > 9)")
    assert report.verdict == "incorrect"
    assert not any("`&` keeps a row" in m for m in report.triggered_pitfalls)


def test_assign_vs_compare_pitfall():
    ex = exercise_by_id("filter-1")
    report = grade(ex, "data |> filter(red = 3)")
    assert report.verdict == "parse_error"
    assert any("`==` tests whether" in m for m in report.triggered_pitfalls)


def test_desc_misplaced_pitfall():
    ex = exercise_by_id("arrange-2")
    report = grade(ex, "data |> arrange(red) |> mutate(x = desc(red))")
    assert report.verdict == "incorrect"
    assert any("desc() only flips" in m for m in report.triggered_pitfalls)


def test_correct_solutions_trigger_no_pitfalls():
    for ex in bank():
        report = grade(ex, ex.model_solution)
        assert report.triggered_pitfalls == (), ex.id


def test_incorrect_frame_reports_cell_diffs():
    ex = exercise_by_id("select-1")
    report = grade(ex, "data |> select(red)")
    assert report.verdict == "incorrect"
    assert report.cell_diffs.dropped_columns != ()


def test_grade_report_serializes_to_json():
    ex = exercise_by_id("filter-1")
    report = grade(ex, "data |> filter(red = 3)")
    blob = json.loads(json.dumps(report.to_json()))
    assert blob["verdict"] == "parse_error"
    assert blob["error"]["code"] == "eq-vs-eqeq"
    assert isinstance(blob["triggered_pitfalls"], list)


def test_exercise_json_round_trip():
    for ex in bank():
        back = exercise_from_json(exercise_to_json(ex))
        assert back.id == ex.id
        assert back.prompt == ex.prompt
        assert back.start_frame == ex.start_frame
        assert back.expected.mode == ex.expected.mode
        assert back.model_solution == ex.model_solution
        assert back.pitfalls == ex.pitfalls
        if ex.expected.mode == SCALAR_ANSWERS:
            assert back.expected.payload == ex.expected.payload
        else:
            assert back.expected.payload == ex.expected.payload


def test_exercise_json_uses_plain_cells():
    ex = exercise_by_id("filter-1")
    blob = exercise_to_json(ex)
    cells = blob["start_frame"]["columns"][0]["cells"]
    assert all(isinstance(c, (int, float)) or c == "NA" for c in cells)


def test_load_exercise_file_accepts_one_or_many(tmp_path):
    exercises = bank()[:2]
    single = tmp_path / "one.json"
    single.write_text(json.dumps(exercise_to_json(exercises[0])))
    assert [e.id for e in load_exercise_file(str(single))] == [exercises[0].id]
    many = tmp_path / "many.json"
    many.write_text(json.dumps([exercise_to_json(e) for e in exercises]))
    assert [e.id for e in load_exercise_file(str(many))] == [e.id for e in exercises]


def test_expected_result_validates_its_payload():
    frame = make_frame(["x"], [[1]])
    with pytest.raises(ValueError):
        ExpectedResult("exact_frame", (1, 2))
    with pytest.raises(ValueError):
        ExpectedResult("scalar_answers", frame)
    with pytest.raises(ValueError):
        ExpectedResult("sideways", frame)


def test_exercise_by_id_raises_for_unknown():
    with pytest.raises(KeyError):
        exercise_by_id("no-such-exercise")


def test_na_cells_survive_exercise_json(tmp_path):
    frame = make_frame(["x"], [[1], [NA]])
    ex = Exercise(id="t", prompt="p", start_frame=frame,
                  expected=ExpectedResult(EXACT_FRAME, frame),
                  model_solution="data")
    back = exercise_from_json(exercise_to_json(ex))
    assert back.start_frame == frame
