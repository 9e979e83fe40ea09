/**
 * Stage strip: one card per pipeline step, showing the verb text and a
 * compact badge summary of what the step changed. Clicking a card selects
 * that step; card 0 is always the untouched input frame.
 */

import type { FrameDiff, WireStage } from "./types.js";

/** Short badges describing a stage diff, like "−1 row" or "+1 col". */
export function diffBadges(diff: FrameDiff): string[] {
  const badges: string[] = [];
  if (diff.dropped_rows.length > 0) {
    const n = diff.dropped_rows.length;
    badges.push(`−${n} row${n === 1 ? "" : "s"}`);
  }
  if (diff.added_columns.length > 0) {
    const n = diff.added_columns.length;
    badges.push(`+${n} col${n === 1 ? "" : "s"}`);
  }
  if (diff.dropped_columns.length > 0) {
    const n = diff.dropped_columns.length;
    badges.push(`−${n} col${n === 1 ? "" : "s"}`);
  }
  if (diff.changed_columns.length > 0) {
    badges.push(`~${diff.changed_columns.join(", ")}`);
  }
  if (diff.row_permutation !== null) {
    badges.push("reordered");
  }
  return badges;
}

function makeCard(
  label: string,
  index: number,
  selected: number,
  onSelect: (index: number) => void,
): HTMLElement {
  const card = document.createElement("button");
  card.type = "button";
  card.className = "stage-card";
  card.dataset.stage = String(index);
  if (index === selected) {
    card.classList.add("selected");
  }
  const verb = document.createElement("span");
  verb.className = "stage-verb";
  verb.textContent = label;
  card.appendChild(verb);
  card.addEventListener("click", () => onSelect(index));
  return card;
}

/**
 * Rebuild the strip for the given stages. The onSelect callback receives
 * the clicked step index (0 for the input card).
 */
export function buildStageStrip(
  container: HTMLElement,
  stages: WireStage[],
  selected: number,
  onSelect: (index: number) => void,
): void {
  container.textContent = "";
  container.appendChild(makeCard("input", 0, selected, onSelect));
  stages.forEach((stage, i) => {
    const card = makeCard(stage.verb, i + 1, selected, onSelect);
    for (const badge of diffBadges(stage.diff)) {
      const el = document.createElement("span");
      el.className = "stage-badge";
      el.textContent = badge;
      card.appendChild(el);
    }
    for (const note of stage.notes) {
      const el = document.createElement("span");
      el.className = "stage-note";
      el.textContent = note;
      card.appendChild(el);
    }
    container.appendChild(card);
  });
}
