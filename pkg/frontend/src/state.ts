/**
 * Workbench state. The UI renders purely from this record plus the latest
 * server responses; nothing here re-implements any wrangling semantics.
 */

import type {
  ErrorBody,
  GradeReport,
  WireFrame,
  WireStage,
} from "./types.js";

export interface BoardState {
  /** Committed frame for the session, as last reported by the service. */
  frame: WireFrame | null;
  /** Stages from the most recent preview or commit. */
  pendingStages: WireStage[];
  /**
   * Which step of the pipeline the board shows. 0 means the input frame;
   * i in [1, pendingStages.length] means the output of stage i.
   */
  selectedStage: number;
  /** Parse or evaluation error from the last execute, if any. */
  error: ErrorBody | null;
  /** Exercise currently being attempted, if any. */
  exerciseId: string | null;
  /** Verdict for the last graded submission, if any. */
  grade: GradeReport | null;
}

export function initialState(): BoardState {
  return {
    frame: null,
    pendingStages: [],
    selectedStage: 0,
    error: null,
    exerciseId: null,
    grade: null,
  };
}

/** Clamp a requested stage index into [0, number of stages]. */
export function selectStage(state: BoardState, index: number): BoardState {
  const clamped = Math.max(0, Math.min(index, state.pendingStages.length));
  return { ...state, selectedStage: clamped };
}

/** The frame the board should display for the selected stage. */
export function frameAt(state: BoardState): WireFrame | null {
  if (state.selectedStage === 0) {
    const first = state.pendingStages[0];
    return first ? first.input : state.frame;
  }
  const stage = state.pendingStages[state.selectedStage - 1];
  return stage ? stage.output : state.frame;
}

/** Record the result of an execute call (preview or commit). */
export function withExecuteResult(
  state: BoardState,
  stages: WireStage[],
  frame: WireFrame,
  error: ErrorBody | null,
  committed: boolean,
): BoardState {
  return {
    ...state,
    frame: committed ? frame : state.frame,
    pendingStages: stages,
    selectedStage: stages.length,
    error,
  };
}
