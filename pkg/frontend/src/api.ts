/**
 * Typed client for the rulecnl language service.
 *
 * Stateless JSON over POST; the vocabulary travels with every request.
 * At most one request per endpoint is in flight: starting a new one
 * aborts the previous (newest wins).
 */

export type Severity = "error" | "warning";
export type HighlightKind = "Term" | "Verb" | "Particle" | "Literal" | "Error";
export type CompletionKind = "Keyword" | "Quantifier" | "Term" | "Name" | "Verb";

export interface Diagnostic {
  severity: Severity;
  code: string;
  message: string;
  start: number; // byte offsets into the UTF-8 document named by `source`
  end: number;
  source: "vocab" | "rule";
}

export interface HighlightSpan {
  start: number;
  end: number;
  class: HighlightKind;
}

export interface CompletionItem {
  label: string;
  kind: CompletionKind;
  detail: string | null;
  replaceStart: number;
  replaceEnd: number;
}

export type CompileResponse = { xml: string } | { diagnostics: Diagnostic[] };

export type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export class ServiceClient {
  private inflight = new Map<string, AbortController>();

  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async diagnostics(vocab: string, text: string): Promise<Diagnostic[]> {
    const body = await this.post("/v1/diagnostics", { vocab, text });
    return (body as { diagnostics: Diagnostic[] }).diagnostics;
  }

  async complete(vocab: string, text: string, cursor: number): Promise<CompletionItem[]> {
    const body = await this.post("/v1/complete", { vocab, text, cursor });
    return (body as { items: CompletionItem[] }).items;
  }

  async highlight(vocab: string, text: string): Promise<HighlightSpan[]> {
    const body = await this.post("/v1/highlight", { vocab, text });
    return (body as { spans: HighlightSpan[] }).spans;
  }

  async compile(vocab: string, text: string): Promise<CompileResponse> {
    return (await this.post("/v1/compile", { vocab, text })) as CompileResponse;
  }

  private async post(path: string, payload: unknown): Promise<unknown> {
    this.inflight.get(path)?.abort();
    const controller = new AbortController();
    this.inflight.set(path, controller);
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal: controller.signal,
    });
    if (!response.ok) {
      throw new Error(`service returned ${response.status} for ${path}`);
    }
    return response.json();
  }
}
