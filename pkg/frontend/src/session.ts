/**
 * Editor session: the two text buffers plus the cached service responses
 * for exactly that text. Any edit marks the caches stale until the next
 * refresh lands; an unreachable service leaves the stale content visible
 * but flagged.
 */

import { CompileResponse, Diagnostic, HighlightSpan, ServiceClient } from "./api.js";

export interface SessionState {
  vocabText: string;
  ruleText: string;
  lastDiagnostics: Diagnostic[] | null;
  lastHighlights: HighlightSpan[] | null;
  lastXml: CompileResponse | null;
  stale: boolean;
  serviceDown: boolean;
}

export class EditorSession {
  state: SessionState = {
    vocabText: "",
    ruleText: "",
    lastDiagnostics: null,
    lastHighlights: null,
    lastXml: null,
    stale: false,
    serviceDown: false,
  };

  constructor(readonly client: ServiceClient) {}

  setText(vocabText: string, ruleText: string): void {
    if (vocabText !== this.state.vocabText || ruleText !== this.state.ruleText) {
      this.state.vocabText = vocabText;
      this.state.ruleText = ruleText;
      this.state.stale = true;
    }
  }

  /** Re-request everything for the current buffers. */
  async refresh(): Promise<void> {
    const { vocabText, ruleText } = this.state;
    try {
      const [diagnostics, highlights, compiled] = await Promise.all([
        this.client.diagnostics(vocabText, ruleText),
        this.client.highlight(vocabText, ruleText),
        this.client.compile(vocabText, ruleText),
      ]);
      if (vocabText !== this.state.vocabText || ruleText !== this.state.ruleText) {
        return; // an edit superseded this refresh
      }
      this.state.lastDiagnostics = diagnostics;
      this.state.lastHighlights = highlights;
      this.state.lastXml = compiled;
      this.state.stale = false;
      this.state.serviceDown = false;
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        return; // newest-wins cancellation
      }
      this.state.serviceDown = true;
      this.state.stale = true;
    }
  }
}
