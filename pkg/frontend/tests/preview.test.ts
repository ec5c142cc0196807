import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import type { CompileResponse, Diagnostic } from "../src/api.js";
import { buildPreview, errorSpans } from "../src/preview.js";

const compiled = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "compile_rule1.json"), "utf-8"),
) as { request: { vocab: string; text: string }; response: CompileResponse };

const failing = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "diagnostics_unknown.json"), "utf-8"),
) as { request: { vocab: string; text: string }; response: { diagnostics: Diagnostic[] } };

const golden = readFileSync(join(__dirname, "fixtures", "rule1_ruleset.golden.xml"), "utf-8");

describe("xml preview", () => {
  it("shows the compiled XML, matching the primary golden file byte for byte", () => {
    const model = buildPreview(compiled.response, compiled.request.vocab, compiled.request.text);
    expect(model.kind).toBe("xml");
    if (model.kind === "xml") {
      expect(model.xml).toBe(golden);
    }
  });

  it("shows diagnostics with their spanned text when the rule is invalid", () => {
    const response: CompileResponse = { diagnostics: failing.response.diagnostics };
    const model = buildPreview(response, failing.request.vocab, failing.request.text);
    expect(model.kind).toBe("diagnostics");
    if (model.kind === "diagnostics") {
      expect(model.lines[0].code).toBe("RCNL-UNKNOWN-WORD");
      expect(model.lines[0].excerpt).toBe("custmer");
    }
  });

  it("exposes error spans for inline squiggles", () => {
    const spans = errorSpans(failing.response.diagnostics);
    expect(spans).toHaveLength(1);
    const { start, end } = spans[0];
    expect(failing.request.text.slice(start, end)).toBe("custmer");
  });

  it("ignores warnings and vocab spans for rule squiggles", () => {
    const diagnostics: Diagnostic[] = [
      { severity: "warning", code: "X", message: "", start: 0, end: 1, source: "rule" },
      { severity: "error", code: "Y", message: "", start: 0, end: 1, source: "vocab" },
    ];
    expect(errorSpans(diagnostics)).toEqual([]);
  });
});
