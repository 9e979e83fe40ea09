/**
 * Cube board rendering. A frame arrives from the service as columns of
 * cells; this module draws it as a grid of coloured cubes, one row element
 * per observation, without interpreting the data beyond its shape.
 */

import { columnColor, cubeText, SUMMARY_COLOR } from "./glyphs.js";
import type { WireCell, WireFrame } from "./types.js";

/** True when the payload has the column/cell shape the board expects. */
export function isWellFormedFrame(frame: unknown): frame is WireFrame {
  if (typeof frame !== "object" || frame === null) {
    return false;
  }
  const candidate = frame as Partial<WireFrame>;
  if (!Array.isArray(candidate.columns) || typeof candidate.nrows !== "number") {
    return false;
  }
  return candidate.columns.every(
    (col) =>
      typeof col === "object" &&
      col !== null &&
      typeof col.name === "string" &&
      Array.isArray(col.cells) &&
      col.cells.length === candidate.nrows,
  );
}

function cellAt(frame: WireFrame, row: number, col: number): WireCell {
  const cell = frame.columns[col]?.cells[row];
  if (cell === undefined) {
    return { value: "NA", glyph: "na" };
  }
  return cell;
}

/** Group-key label for a row, like "blue = 3" or "red = 4, blue = 6". */
function groupLabel(frame: WireFrame, row: number): string {
  const parts: string[] = [];
  for (const name of frame.groups) {
    const index = frame.columns.findIndex((col) => col.name === name);
    if (index >= 0) {
      parts.push(`${name} = ${cubeText(cellAt(frame, row, index))}`);
    }
  }
  return parts.join(", ");
}

function renderHeader(frame: WireFrame): HTMLElement {
  const header = document.createElement("div");
  header.className = "board-header";
  frame.columns.forEach((col, index) => {
    const label = document.createElement("span");
    label.className = "column-name";
    label.textContent = col.name;
    label.style.color = columnColor(col.name, index, frame.summary_flag);
    if (frame.groups.includes(col.name)) {
      label.classList.add("group-key");
    }
    header.appendChild(label);
  });
  return header;
}

function renderRow(frame: WireFrame, row: number): HTMLElement {
  const rowEl = document.createElement("div");
  rowEl.className = "board-row";
  rowEl.dataset.row = String(row + 1);
  frame.columns.forEach((col, index) => {
    const cube = document.createElement("span");
    cube.className = "cube";
    const cell = cellAt(frame, row, index);
    const color = columnColor(col.name, index, frame.summary_flag);
    cube.textContent = cubeText(cell);
    cube.style.backgroundColor = color;
    cube.dataset.color = color;
    cube.dataset.row = String(row + 1);
    cube.dataset.col = col.name;
    cube.dataset.glyph = cell.glyph;
    if (cell.glyph === "na") {
      cube.classList.add("na");
    }
    rowEl.appendChild(cube);
  });
  return rowEl;
}

/** Fallback for payloads the cube renderer cannot trust: a plain table. */
function renderFallback(container: HTMLElement, frame: unknown): void {
  const table = document.createElement("table");
  table.className = "board-fallback";
  const columns =
    typeof frame === "object" && frame !== null && Array.isArray((frame as WireFrame).columns)
      ? (frame as WireFrame).columns
      : [];
  for (const col of columns) {
    const row = document.createElement("tr");
    const name = document.createElement("th");
    name.textContent = typeof col?.name === "string" ? col.name : "?";
    row.appendChild(name);
    const cells = Array.isArray(col?.cells) ? col.cells : [];
    for (const cell of cells) {
      const td = document.createElement("td");
      td.textContent = cell && typeof cell === "object" ? String(cell.value) : "?";
      row.appendChild(td);
    }
    table.appendChild(row);
  }
  container.appendChild(table);
}

/**
 * Draw a frame into the container, replacing any previous board. Grouped
 * frames render as separated stacks, one per run of equal group keys;
 * summary frames use the reserved summary colour throughout.
 */
export function renderBoard(container: HTMLElement, frame: unknown): void {
  container.textContent = "";
  if (!isWellFormedFrame(frame)) {
    renderFallback(container, frame);
    return;
  }
  container.appendChild(renderHeader(frame));
  if (frame.nrows === 0) {
    const empty = document.createElement("div");
    empty.className = "board-empty";
    empty.textContent = "(no rows)";
    container.appendChild(empty);
    return;
  }
  const grouped = frame.groups.length > 0;
  let stack: HTMLElement | null = null;
  let lastKey: string | null = null;
  for (let row = 0; row < frame.nrows; row += 1) {
    if (grouped) {
      const key = groupLabel(frame, row);
      if (stack === null || key !== lastKey) {
        stack = document.createElement("div");
        stack.className = "group-stack";
        const label = document.createElement("div");
        label.className = "group-label";
        label.textContent = key;
        stack.appendChild(label);
        container.appendChild(stack);
        lastKey = key;
      }
      stack.appendChild(renderRow(frame, row));
    } else {
      container.appendChild(renderRow(frame, row));
    }
  }
}

/**
 * Mark rows as leaving so CSS can animate their removal. Row numbers are
 * 1-based, matching the diff payloads from the service.
 */
export function animateRowRemoval(container: HTMLElement, rows: number[]): void {
  const leaving = new Set(rows.map(String));
  const rowEls = container.querySelectorAll<HTMLElement>(".board-row");
  rowEls.forEach((rowEl) => {
    if (rowEl.dataset.row !== undefined && leaving.has(rowEl.dataset.row)) {
      rowEl.classList.add("row-leaving");
    }
  });
}

export { SUMMARY_COLOR };
