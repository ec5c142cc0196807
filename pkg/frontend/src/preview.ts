/**
 * XML preview panel model: the compiled document when the rules are
 * valid, otherwise the diagnostics anchored to their rule-text spans.
 */

import type { CompileResponse, Diagnostic } from "./api.js";
import { sliceBytes } from "./offsets.js";

export interface DiagnosticLine {
  severity: "error" | "warning";
  code: string;
  message: string;
  excerpt: string; // the spanned text in its document
}

export type PreviewModel =
  | { kind: "xml"; xml: string }
  | { kind: "diagnostics"; lines: DiagnosticLine[] };

export function buildPreview(
  response: CompileResponse,
  vocabText: string,
  ruleText: string,
): PreviewModel {
  if ("xml" in response) {
    return { kind: "xml", xml: response.xml };
  }
  return { kind: "diagnostics", lines: response.diagnostics.map((d) => toLine(d, vocabText, ruleText)) };
}

export function toLine(d: Diagnostic, vocabText: string, ruleText: string): DiagnosticLine {
  const doc = d.source === "vocab" ? vocabText : ruleText;
  return {
    severity: d.severity,
    code: d.code,
    message: d.message,
    excerpt: sliceBytes(doc, d.start, d.end),
  };
}

/** Spans to red-underline in the rule editor (error severity only). */
export function errorSpans(diagnostics: Diagnostic[]): { start: number; end: number }[] {
  return diagnostics
    .filter((d) => d.source === "rule" && d.severity === "error")
    .map((d) => ({ start: d.start, end: d.end }));
}
