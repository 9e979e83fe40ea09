/**
 * Wire protocol types for the cubeframes session service.
 *
 * These mirror the JSON the service emits byte for byte; the workbench never
 * computes wrangling results itself, it only renders what the server sends.
 */

export type Glyph =
  | "triangle"
  | "square"
  | "pentagon"
  | "hexagon"
  | "numeral"
  | "na";

export interface WireCell {
  value: number | "NA";
  glyph: Glyph;
}

export interface WireColumn {
  name: string;
  cells: WireCell[];
}

export interface WireFrame {
  columns: WireColumn[];
  groups: string[];
  summary_flag: boolean;
  nrows: number;
}

/** Row indices are 1-based, matching the grid the student sees. */
export interface FrameDiff {
  kept_rows: number[];
  dropped_rows: number[];
  added_columns: string[];
  dropped_columns: string[];
  changed_columns: string[];
  row_permutation: number[] | null;
}

export interface WireStage {
  verb: string;
  input: WireFrame;
  output: WireFrame;
  diff: FrameDiff;
  notes: string[];
}

export interface SourceErrorBody {
  message: string;
  span: [number, number] | null;
  hint: string | null;
  code: string | null;
}

export interface ErrorBody extends SourceErrorBody {
  stage_index: number | null;
}

export interface ExecuteResponse {
  stages: WireStage[];
  frame: WireFrame;
  error?: ErrorBody;
}

export interface SessionCreated {
  session_id: string;
  frame: WireFrame;
}

export interface SessionExport {
  session_id: string;
  frame: WireFrame;
  initial_frame: WireFrame;
  history: string[];
  active_exercise: string | null;
}

export interface GradeReport {
  verdict: "correct" | "incorrect" | "parse_error";
  cell_diffs: FrameDiff;
  triggered_pitfalls: string[];
  error: SourceErrorBody | null;
  result: WireFrame | null;
}

export interface ExerciseInfo {
  id: string;
  prompt: string;
  mode: string;
  start_frame: WireFrame;
}

export interface FixtureInfo {
  id: string;
  nrows: number;
  ncols: number;
  names: string[];
}
