import { describe, expect, it } from "vitest";
import {
  frameAt,
  initialState,
  selectStage,
  withExecuteResult,
} from "../src/state.js";
import type { ExecuteResponse, SessionCreated } from "../src/types.js";
import sessionFixture from "./fixtures/session_figure1.json";
import filterFixture from "./fixtures/execute_filter.json";
import summaryFixture from "./fixtures/execute_summary.json";

const session = sessionFixture as unknown as SessionCreated;
const filterRun = filterFixture as unknown as ExecuteResponse;
const summaryRun = summaryFixture as unknown as ExecuteResponse;

function previewed(run: ExecuteResponse) {
  const base = { ...initialState(), frame: session.frame };
  return withExecuteResult(base, run.stages, run.frame, null, false);
}

describe("selectStage", () => {
  it("clamps the index into [0, stage count]", () => {
    const state = previewed(summaryRun);
    expect(selectStage(state, -3).selectedStage).toBe(0);
    expect(selectStage(state, 0).selectedStage).toBe(0);
    expect(selectStage(state, 2).selectedStage).toBe(2);
    expect(selectStage(state, 99).selectedStage).toBe(2);
  });

  it("pins to zero when nothing is pending", () => {
    const state = { ...initialState(), frame: session.frame };
    expect(selectStage(state, 5).selectedStage).toBe(0);
  });
});

describe("frameAt", () => {
  it("shows the stage input at step zero", () => {
    const state = selectStage(previewed(filterRun), 0);
    expect(frameAt(state)).toBe(filterRun.stages[0]!.input);
    expect(frameAt(state)!.nrows).toBe(3);
  });

  it("shows each stage output at its own step", () => {
    const state = previewed(summaryRun);
    expect(frameAt(selectStage(state, 1))).toBe(summaryRun.stages[0]!.output);
    expect(frameAt(selectStage(state, 2))).toBe(summaryRun.stages[1]!.output);
  });

  it("falls back to the committed frame without stages", () => {
    const state = { ...initialState(), frame: session.frame };
    expect(frameAt(state)).toBe(session.frame);
  });
});

describe("withExecuteResult", () => {
  it("selects the final stage after a run", () => {
    const state = previewed(summaryRun);
    expect(state.selectedStage).toBe(2);
    expect(state.pendingStages).toHaveLength(2);
  });

  it("keeps the committed frame unchanged on preview", () => {
    const state = previewed(filterRun);
    expect(state.frame).toBe(session.frame);
    expect(state.frame!.nrows).toBe(3);
  });

  it("adopts the new frame on commit", () => {
    const base = { ...initialState(), frame: session.frame };
    const state = withExecuteResult(
      base,
      filterRun.stages,
      filterRun.frame,
      null,
      true,
    );
    expect(state.frame).toBe(filterRun.frame);
    expect(state.frame!.nrows).toBe(2);
  });

  it("records errors without touching the committed frame", () => {
    const base = { ...initialState(), frame: session.frame };
    const error = {
      message: "unknown verb 'fliter'",
      span: [8, 14] as [number, number],
      hint: "did you mean filter?",
      code: "unknown-verb",
      stage_index: null,
    };
    const state = withExecuteResult(base, [], session.frame, error, false);
    expect(state.error).toBe(error);
    expect(state.frame).toBe(session.frame);
    expect(state.selectedStage).toBe(0);
  });
});
