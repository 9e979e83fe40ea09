/**
 * Exercise panel: shows the active prompt and, once an answer has been
 * graded, the verdict plus any pitfall hints and a summary of how the
 * submitted frame differs from the expected one.
 */

import { renderBoard } from "./board.js";
import type { ExerciseInfo, FrameDiff, GradeReport } from "./types.js";

/** Human lines describing where a submission diverged from the target. */
export function mismatchLines(diff: FrameDiff): string[] {
  const lines: string[] = [];
  if (diff.dropped_rows.length > 0) {
    lines.push(`missing expected row(s): ${diff.dropped_rows.join(", ")}`);
  }
  if (diff.added_columns.length > 0) {
    lines.push(`unexpected column(s): ${diff.added_columns.join(", ")}`);
  }
  if (diff.dropped_columns.length > 0) {
    lines.push(`missing column(s): ${diff.dropped_columns.join(", ")}`);
  }
  if (diff.changed_columns.length > 0) {
    lines.push(`values differ in: ${diff.changed_columns.join(", ")}`);
  }
  if (diff.row_permutation !== null) {
    lines.push("rows are in a different order");
  }
  return lines;
}

export function renderExercisePanel(
  container: HTMLElement,
  exercise: ExerciseInfo | null,
  report: GradeReport | null,
): void {
  container.textContent = "";
  if (exercise === null) {
    container.hidden = true;
    return;
  }
  container.hidden = false;
  const prompt = document.createElement("p");
  prompt.className = "exercise-prompt";
  prompt.textContent = exercise.prompt;
  container.appendChild(prompt);
  if (report === null) {
    return;
  }
  const verdict = document.createElement("div");
  verdict.className = `verdict ${report.verdict}`;
  verdict.textContent = report.verdict;
  container.appendChild(verdict);
  if (report.error !== null) {
    const error = document.createElement("div");
    error.className = "grade-error";
    error.textContent = report.error.message;
    container.appendChild(error);
  }
  for (const pitfall of report.triggered_pitfalls) {
    const hint = document.createElement("div");
    hint.className = "pitfall-hint";
    hint.textContent = pitfall;
    container.appendChild(hint);
  }
  if (report.verdict === "incorrect") {
    const lines = mismatchLines(report.cell_diffs);
    const diff = report.cell_diffs;
    // row counts only appear in the diff when the shapes disagree
    const rowRegime = diff.kept_rows.length + diff.dropped_rows.length > 0;
    if (report.result !== null && rowRegime) {
      const extras = report.result.nrows - diff.kept_rows.length;
      if (extras > 0) {
        lines.push(`${extras} extra row(s) the target does not have`);
      }
    }
    const list = document.createElement("ul");
    list.className = "mismatch-list";
    for (const line of lines) {
      const item = document.createElement("li");
      item.textContent = line;
      list.appendChild(item);
    }
    if (list.childElementCount > 0) {
      container.appendChild(list);
    }
  }
  if (report.result !== null) {
    const caption = document.createElement("div");
    caption.className = "grade-result-caption";
    caption.textContent = "your result:";
    container.appendChild(caption);
    const board = document.createElement("div");
    board.className = "grade-result";
    renderBoard(board, report.result);
    if (report.verdict === "incorrect") {
      highlightMismatches(board, report);
    }
    container.appendChild(board);
  }
}

/**
 * Mark the flagged parts of the submitted frame. The grade diff names
 * mismatching columns but counts rows against the target frame, so only
 * column mismatches can be pinned to cubes on the student's grid.
 */
function highlightMismatches(board: HTMLElement, report: GradeReport): void {
  const diff = report.cell_diffs;
  const wrongColumns = new Set([...diff.changed_columns, ...diff.added_columns]);
  board.querySelectorAll<HTMLElement>(".cube").forEach((cube) => {
    if (cube.dataset.col !== undefined && wrongColumns.has(cube.dataset.col)) {
      cube.classList.add("cube-mismatch");
    }
  });
}
