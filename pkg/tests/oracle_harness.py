"""Differential runner: the engine versus the naive reference interpreter.

Each case draws a random frame and a random pipeline over it, runs both
interpreters, and demands either cell-for-cell identical output or an error
from both sides.  Assertion messages carry the pipeline text and the frame
so a failing draw can be replayed by hand.
"""

from __future__ import annotations

import random

from cubeframes.engine import eval_pipeline
from cubeframes.errors import CubesError
from cubeframes.lang.printer import pretty_print
from cubeframes.model import CubeFrame

from randgen import random_frame, random_pipeline
from reference_interp import RefError, frames_agree, ref_eval_pipeline


def _describe(frame: CubeFrame, source: str) -> str:
    cols = ", ".join(f"{name}={list(cells)}" for name, cells in frame.columns)
    return f"pipeline: {source}\nframe: {cols} (nrows={frame.nrows})"


def run_differential_case(rng: random.Random) -> str:
    """Run one random case; returns "ok" or "error" (the agreed outcome)."""
    frame = random_frame(rng)
    pipeline = random_pipeline(rng, frame)
    source = pretty_print(pipeline)

    engine_out = engine_err = None
    try:
        engine_out, _ = eval_pipeline(frame, pipeline)
    except CubesError as err:
        engine_err = err

    ref_out = ref_err = None
    try:
        ref_out = ref_eval_pipeline(frame, pipeline)
    except RefError as err:
        ref_err = err

    if engine_err is not None or ref_err is not None:
        assert engine_err is not None, (
            f"reference raised {ref_err!r} but the engine succeeded\n"
            + _describe(frame, source))
        assert ref_err is not None, (
            f"engine raised {engine_err!r} but the reference succeeded\n"
            + _describe(frame, source))
        return "error"

    assert frames_agree(engine_out, ref_out), (
        "engine and reference disagree\n" + _describe(frame, source)
        + f"\nengine: {engine_out!r}\nreference: {ref_out.names} "
        + f"{ref_out.rows} groups={ref_out.groups} summary={ref_out.summary}")
    return "ok"


def run_differential_batch(seed: int, cases: int) -> dict[str, int]:
    """Run ``cases`` draws from one seed; returns outcome tallies."""
    rng = random.Random(seed)
    tally = {"ok": 0, "error": 0}
    for _ in range(cases):
        tally[run_differential_case(rng)] += 1
    return tally
