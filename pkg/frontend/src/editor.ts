/**
 * Pipeline editor: a plain textarea plus a mirror line that underlines the
 * exact character span the service flagged, so parse errors point at the
 * offending token rather than the whole line.
 */

import type { SourceErrorBody } from "./types.js";

const VERBS: Array<[string, string]> = [
  ["filter", "keep rows where a test passes"],
  ["select", "keep only the named columns"],
  ["mutate", "add a column computed from the others"],
  ["arrange", "sort rows by one or more columns"],
  ["group_by", "split later steps by key columns"],
  ["summarize", "collapse each group to one row"],
];

/** Read-only palette listing the available verbs. */
export function buildVerbPalette(container: HTMLElement): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "verb-palette";
  for (const [name, blurb] of VERBS) {
    const item = document.createElement("li");
    const verb = document.createElement("code");
    verb.textContent = name;
    item.appendChild(verb);
    item.appendChild(document.createTextNode(` ${blurb}`));
    list.appendChild(item);
  }
  container.appendChild(list);
}

export class PipelineEditor {
  readonly textarea: HTMLTextAreaElement;
  private mirror: HTMLElement;
  private errorBox: HTMLElement;

  constructor(root: HTMLElement) {
    this.textarea = document.createElement("textarea");
    this.textarea.className = "pipeline-source";
    this.textarea.rows = 4;
    this.textarea.spellcheck = false;
    this.mirror = document.createElement("div");
    this.mirror.className = "editor-mirror";
    this.mirror.hidden = true;
    this.errorBox = document.createElement("div");
    this.errorBox.className = "error-box";
    this.errorBox.hidden = true;
    root.appendChild(this.textarea);
    root.appendChild(this.mirror);
    root.appendChild(this.errorBox);
    this.textarea.addEventListener("input", () => this.clearError());
  }

  get source(): string {
    return this.textarea.value;
  }

  set source(value: string) {
    this.textarea.value = value;
  }

  /** Show a service error, underlining its span when one is reported. */
  showError(error: SourceErrorBody): void {
    this.mirror.textContent = "";
    if (error.span !== null) {
      const [start, end] = error.span;
      const text = this.textarea.value;
      const before = document.createElement("span");
      before.textContent = text.slice(0, start);
      const marked = document.createElement("span");
      marked.className = "error-span";
      marked.textContent = text.slice(start, end);
      const after = document.createElement("span");
      after.textContent = text.slice(end);
      this.mirror.append(before, marked, after);
      this.mirror.hidden = false;
    } else {
      this.mirror.hidden = true;
    }
    this.errorBox.textContent = "";
    const message = document.createElement("div");
    message.className = "error-message";
    message.textContent = error.message;
    this.errorBox.appendChild(message);
    if (error.hint !== null) {
      const hint = document.createElement("div");
      hint.className = "error-hint";
      hint.textContent = error.hint;
      this.errorBox.appendChild(hint);
    }
    this.errorBox.hidden = false;
  }

  clearError(): void {
    this.mirror.textContent = "";
    this.mirror.hidden = true;
    this.errorBox.textContent = "";
    this.errorBox.hidden = true;
  }
}
