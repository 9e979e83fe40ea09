/**
 * Cube appearance: shape characters per glyph and the color scheme.
 *
 * The six canonical column names carry their own color; other columns cycle
 * through a fallback palette. Summary frames use one reserved color that no
 * ordinary column ever gets, so a reduced result is visually unmistakable.
 */

import type { WireCell } from "./types.js";

export const GLYPH_CHARS: Record<string, string> = {
  triangle: "▲",
  square: "■",
  pentagon: "⬟",
  hexagon: "⬢",
};

export const COLUMN_COLORS: Record<string, string> = {
  red: "#d64541",
  orange: "#e67e22",
  yellow: "#d4ac0d",
  green: "#27ae60",
  blue: "#2980b9",
  purple: "#8e44ad",
};

export const FALLBACK_COLORS = [
  "#7f8c8d",
  "#34495e",
  "#a04000",
  "#117864",
  "#6c3483",
  "#935116",
];

/** Reserved seventh color for summary frames; never used for columns. */
export const SUMMARY_COLOR = "#0fb9b1";

/** Text shown inside one cube. */
export function cubeText(cell: WireCell): string {
  if (cell.glyph === "na") {
    return "NA";
  }
  if (cell.glyph === "numeral") {
    return String(cell.value);
  }
  return GLYPH_CHARS[cell.glyph] ?? String(cell.value);
}

/** Color for a column's cubes; summary frames override every column. */
export function columnColor(
  name: string,
  index: number,
  summary: boolean,
): string {
  if (summary) {
    return SUMMARY_COLOR;
  }
  const named = COLUMN_COLORS[name];
  if (named !== undefined) {
    return named;
  }
  return FALLBACK_COLORS[index % FALLBACK_COLORS.length] as string;
}
