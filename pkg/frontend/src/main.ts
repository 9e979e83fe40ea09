/**
 * Workbench wiring. Everything on screen derives from BoardState plus the
 * latest service responses; the browser never computes a wrangling result
 * itself. Running a pipeline previews it stage by stage; commit re-runs it
 * against the session for real.
 */

import { ApiClient, ApiError } from "./api.js";
import { animateRowRemoval, renderBoard } from "./board.js";
import { buildVerbPalette, PipelineEditor } from "./editor.js";
import { renderExercisePanel } from "./exercise.js";
import {
  frameAt,
  initialState,
  selectStage,
  withExecuteResult,
  type BoardState,
} from "./state.js";
import { buildStageStrip } from "./stages.js";
import type { ExerciseInfo, WireFrame } from "./types.js";

const ROW_LEAVE_MS = 450;

/** Service base URL: ?service=... wins, then the body data attribute. */
export function resolveBaseUrl(win: Window): string {
  const fromQuery = new URLSearchParams(win.location.search).get("service");
  if (fromQuery !== null && fromQuery !== "") {
    return fromQuery;
  }
  const fromBody = win.document.body.dataset.service;
  if (fromBody !== undefined && fromBody !== "") {
    return fromBody;
  }
  return "http://127.0.0.1:7878";
}

interface Elements {
  board: HTMLElement;
  stages: HTMLElement;
  editorHost: HTMLElement;
  palette: HTMLElement;
  exercisePanel: HTMLElement;
  exercisePicker: HTMLSelectElement;
  runButton: HTMLButtonElement;
  commitButton: HTMLButtonElement;
  gradeButton: HTMLButtonElement;
  status: HTMLElement;
}

export class Workbench {
  state: BoardState = initialState();
  sessionId: string | null = null;
  exercises: ExerciseInfo[] = [];
  private editor: PipelineEditor;

  constructor(
    private api: ApiClient,
    private els: Elements,
  ) {
    this.editor = new PipelineEditor(els.editorHost);
    buildVerbPalette(els.palette);
    els.runButton.addEventListener("click", () => {
      void this.run(true);
    });
    els.commitButton.addEventListener("click", () => {
      void this.run(false);
    });
    els.gradeButton.addEventListener("click", () => {
      void this.gradeCurrent();
    });
    els.exercisePicker.addEventListener("change", () => {
      void this.pickExercise(this.els.exercisePicker.value);
    });
  }

  get source(): string {
    return this.editor.source;
  }

  set source(value: string) {
    this.editor.source = value;
  }

  private setStatus(text: string): void {
    this.els.status.textContent = text;
  }

  private redraw(): void {
    renderBoard(this.els.board, frameAt(this.state));
    buildStageStrip(
      this.els.stages,
      this.state.pendingStages,
      this.state.selectedStage,
      (index) => this.showStage(index),
    );
    const exercise =
      this.exercises.find((ex) => ex.id === this.state.exerciseId) ?? null;
    renderExercisePanel(this.els.exercisePanel, exercise, this.state.grade);
  }

  async start(fixture: string): Promise<void> {
    const created = await this.api.createSession({ fixture });
    this.sessionId = created.session_id;
    this.state = { ...initialState(), frame: created.frame };
    this.exercises = await this.api.listExercises();
    this.fillExercisePicker();
    this.redraw();
    this.setStatus(`session ${created.session_id.slice(0, 8)} on ${fixture}`);
  }

  private fillExercisePicker(): void {
    this.els.exercisePicker.textContent = "";
    const blank = document.createElement("option");
    blank.value = "";
    blank.textContent = "(free play)";
    this.els.exercisePicker.appendChild(blank);
    for (const ex of this.exercises) {
      const option = document.createElement("option");
      option.value = ex.id;
      option.textContent = ex.id;
      this.els.exercisePicker.appendChild(option);
    }
  }

  /** Run the editor source; preview leaves the session frame untouched. */
  async run(preview: boolean): Promise<void> {
    if (this.sessionId === null) {
      return;
    }
    this.editor.clearError();
    let response;
    try {
      response = await this.api.execute(this.sessionId, this.source, preview);
    } catch (err) {
      this.setStatus(err instanceof ApiError ? err.message : String(err));
      return;
    }
    if (response === null) {
      return; // a newer run superseded this one
    }
    const next = withExecuteResult(
      this.state,
      response.stages,
      response.frame,
      response.error ?? null,
      !preview,
    );
    if (response.error !== undefined) {
      this.state = next;
      this.editor.showError(response.error);
      this.setStatus(response.error.message);
      this.redraw();
      return;
    }
    this.setStatus(
      preview
        ? `previewed ${response.stages.length} stage(s)`
        : `committed ${response.stages.length} stage(s)`,
    );
    const dropped = response.stages[0]?.diff.dropped_rows ?? [];
    if (dropped.length > 0) {
      // show the input first so the dropped rows can animate out
      this.state = selectStage(next, 0);
      this.redraw();
      animateRowRemoval(this.els.board, dropped);
      window.setTimeout(() => {
        this.state = next;
        this.redraw();
      }, ROW_LEAVE_MS);
      return;
    }
    this.state = next;
    this.redraw();
  }

  /**
   * Select a pipeline step. Moving one step forward over a row-dropping
   * verb first marks the leaving rows so the board can animate them out.
   */
  showStage(index: number): void {
    const next = selectStage(this.state, index);
    const stage = this.state.pendingStages[next.selectedStage - 1];
    const forwardByOne = next.selectedStage === this.state.selectedStage + 1;
    if (forwardByOne && stage !== undefined && stage.diff.dropped_rows.length > 0) {
      animateRowRemoval(this.els.board, stage.diff.dropped_rows);
      window.setTimeout(() => {
        this.state = next;
        this.redraw();
      }, ROW_LEAVE_MS);
      return;
    }
    this.state = next;
    this.redraw();
  }

  async pickExercise(id: string): Promise<void> {
    if (id === "") {
      this.state = { ...this.state, exerciseId: null, grade: null };
      this.redraw();
      return;
    }
    const exercise = this.exercises.find((ex) => ex.id === id);
    if (exercise === undefined) {
      return;
    }
    const created = await this.api.createSession({
      frame: exercise.start_frame as WireFrame,
    });
    this.sessionId = created.session_id;
    this.state = {
      ...initialState(),
      frame: created.frame,
      exerciseId: id,
    };
    this.redraw();
    this.setStatus(`exercise ${id}`);
  }

  async gradeCurrent(): Promise<void> {
    if (this.sessionId === null || this.state.exerciseId === null) {
      this.setStatus("pick an exercise first");
      return;
    }
    this.editor.clearError();
    let report;
    try {
      report = await this.api.grade(
        this.sessionId,
        this.state.exerciseId,
        this.source,
      );
    } catch (err) {
      this.setStatus(err instanceof ApiError ? err.message : String(err));
      return;
    }
    this.state = { ...this.state, grade: report };
    if (report.error !== null) {
      this.editor.showError(report.error);
    }
    this.redraw();
    this.setStatus(`verdict: ${report.verdict}`);
  }
}

function requireEl<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing #${id}`);
  }
  return el as T;
}

export async function bootstrap(win: Window): Promise<Workbench> {
  const api = new ApiClient(resolveBaseUrl(win));
  const bench = new Workbench(api, {
    board: requireEl("board"),
    stages: requireEl("stages"),
    editorHost: requireEl("editor"),
    palette: requireEl("palette"),
    exercisePanel: requireEl("exercise-panel"),
    exercisePicker: requireEl<HTMLSelectElement>("exercise-picker"),
    runButton: requireEl<HTMLButtonElement>("run-button"),
    commitButton: requireEl<HTMLButtonElement>("commit-button"),
    gradeButton: requireEl<HTMLButtonElement>("grade-button"),
    status: requireEl("status"),
  });
  await bench.start("figure1");
  return bench;
}

// Auto-start only on the real page; tests build their own fixtures.
if (typeof document !== "undefined" && document.getElementById("board") !== null) {
  bootstrap(window).catch((err) => {
    const status = document.getElementById("status");
    if (status !== null) {
      status.textContent = `could not reach the service: ${err}`;
    }
  });
}
