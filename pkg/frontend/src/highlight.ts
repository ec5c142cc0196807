/**
 * Rendering model for rule-text highlighting.
 *
 * The service decides what every span means; this module only turns its
 * spans into styled segments, reproducing the language's typography:
 * terms underlined, verbs italic, particles bold, unknown words
 * red-underlined.
 */

import type { HighlightKind, HighlightSpan } from "./api.js";
import { byteToChar } from "./offsets.js";

export interface Segment {
  text: string;
  kind: HighlightKind | null; // null: plain text between spans
}

/** CSS class per highlight kind; the stylesheet maps these to typography. */
export const CLASS_OF: Record<HighlightKind, string> = {
  Term: "hl-term",
  Verb: "hl-verb",
  Particle: "hl-particle",
  Literal: "hl-literal",
  Error: "hl-error",
};

/** The typography each class renders with (asserted by tests). */
export const TYPOGRAPHY: Record<HighlightKind, string> = {
  Term: "underline",
  Verb: "italic",
  Particle: "bold",
  Literal: "plain",
  Error: "red-underline",
};

/** Split `text` into plain and classified segments along the spans. */
export function segment(text: string, spans: HighlightSpan[]): Segment[] {
  const ordered = [...spans].sort((a, b) => a.start - b.start);
  const out: Segment[] = [];
  let pos = 0;
  for (const span of ordered) {
    const start = byteToChar(text, span.start);
    const end = byteToChar(text, span.end);
    if (start > pos) {
      out.push({ text: text.slice(pos, start), kind: null });
    }
    out.push({ text: text.slice(start, end), kind: span.class });
    pos = end;
  }
  if (pos < text.length) {
    out.push({ text: text.slice(pos), kind: null });
  }
  return out;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** HTML for the highlight backdrop behind the rule editor. */
export function toHtml(segments: Segment[]): string {
  return segments
    .map((s) =>
      s.kind === null
        ? escapeHtml(s.text)
        : `<span class="${CLASS_OF[s.kind]}">${escapeHtml(s.text)}</span>`,
    )
    .join("");
}
