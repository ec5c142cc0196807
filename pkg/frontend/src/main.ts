/**
 * DOM wiring for the vocabulary and rule editors. All language behavior
 * (highlighting, diagnostics, completion, XML) comes from the service;
 * this file only moves bytes between the service and the page.
 */

import { CompletionItem, ServiceClient } from "./api.js";
import { groupItems, splice } from "./completion.js";
import { debounce, REFRESH_DEBOUNCE_MS } from "./debounce.js";
import { escapeHtml, segment, toHtml } from "./highlight.js";
import { charToByte } from "./offsets.js";
import { buildOutline, OutlineNode } from "./outline.js";
import { buildPreview, toLine } from "./preview.js";
import { EditorSession } from "./session.js";

const SAMPLE_VOCAB = `# Declare the business vocabulary first
Term: customer
Term: order
Term: account
Term: outstanding balance
Verb: order shipped
Verb: customer adult
Verb: customer places order
Verb: customer holds account
Verb: account has outstanding balance
`;

const SAMPLE_RULE =
  "It is obligatory that each customer places at least one order";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

function serviceBase(): string {
  // served under /ui/ by `rulecnl serve`; same origin hosts the API
  return window.location.origin;
}

function main(): void {
  const vocabInput = el<HTMLTextAreaElement>("vocab-input");
  const ruleInput = el<HTMLTextAreaElement>("rule-input");
  const backdrop = el<HTMLDivElement>("rule-backdrop");
  const popup = el<HTMLDivElement>("completion-popup");
  const outlineRoot = el<HTMLUListElement>("outline");
  const preview = el<HTMLPreElement>("xml-preview");
  const diagnosticsList = el<HTMLUListElement>("diagnostics");
  const banner = el<HTMLDivElement>("status-banner");

  vocabInput.value = localStorage.getItem("rulecnl.vocab") ?? SAMPLE_VOCAB;
  ruleInput.value = localStorage.getItem("rulecnl.rules") ?? SAMPLE_RULE;

  const session = new EditorSession(new ServiceClient(serviceBase()));

  function render(): void {
    const { state } = session;
    banner.hidden = !state.serviceDown;
    preview.classList.toggle("stale", state.stale);

    if (state.lastHighlights !== null) {
      backdrop.innerHTML = toHtml(segment(state.ruleText, state.lastHighlights));
    } else {
      backdrop.textContent = state.ruleText;
    }

    diagnosticsList.innerHTML = "";
    const vocabErrors = (state.lastDiagnostics ?? []).filter((d) => d.source === "vocab");
    for (const d of state.lastDiagnostics ?? []) {
      const line = toLine(d, state.vocabText, state.ruleText);
      const item = document.createElement("li");
      item.className = `diag-${line.severity}`;
      item.textContent = `${line.severity} ${line.code}: ${line.message}`;
      diagnosticsList.appendChild(item);
    }

    if (vocabErrors.some((d) => d.severity === "error")) {
      outlineRoot.innerHTML = "";
      for (const d of vocabErrors) {
        const item = document.createElement("li");
        item.className = "diag-error";
        item.textContent = `${d.code}: ${d.message}`;
        outlineRoot.appendChild(item);
      }
    } else {
      renderOutline(outlineRoot, buildOutline(state.vocabText), vocabInput);
    }

    if (state.lastXml !== null) {
      const model = buildPreview(state.lastXml, state.vocabText, state.ruleText);
      if (model.kind === "xml") {
        preview.textContent = model.xml;
      } else {
        preview.innerHTML = model.lines
          .map((l) => `<span class="diag-${l.severity}">${escapeHtml(
            `${l.code} at "${l.excerpt}": ${l.message}`)}</span>`)
          .join("\n");
      }
    }
  }

  const refresh = debounce(async () => {
    session.setText(vocabInput.value, ruleInput.value);
    localStorage.setItem("rulecnl.vocab", vocabInput.value);
    localStorage.setItem("rulecnl.rules", ruleInput.value);
    await session.refresh();
    render();
  }, REFRESH_DEBOUNCE_MS);

  async function showCompletions(): Promise<void> {
    const cursor = charToByte(ruleInput.value, ruleInput.selectionStart ?? 0);
    let items: CompletionItem[];
    try {
      items = await session.client.complete(vocabInput.value, ruleInput.value, cursor);
    } catch {
      return; // aborted or unreachable: keep whatever is showing
    }
    renderPopup(popup, items, (item) => {
      const result = splice(ruleInput.value, item);
      ruleInput.value = result.text;
      ruleInput.setSelectionRange(result.cursor, result.cursor);
      popup.hidden = true;
      ruleInput.focus();
      refresh();
    });
  }

  vocabInput.addEventListener("input", refresh);
  ruleInput.addEventListener("input", () => {
    refresh();
    void showCompletions();
  });
  ruleInput.addEventListener("keydown", (event) => {
    if (event.key === "Escape") popup.hidden = true;
    if (event.ctrlKey && event.key === " ") {
      event.preventDefault();
      void showCompletions();
    }
  });
  ruleInput.addEventListener("scroll", () => {
    backdrop.scrollLeft = ruleInput.scrollLeft;
    backdrop.scrollTop = ruleInput.scrollTop;
  });

  session.setText(vocabInput.value, ruleInput.value);
  void session.refresh().then(render);
}

function renderPopup(
  popup: HTMLDivElement,
  items: CompletionItem[],
  apply: (item: CompletionItem) => void,
): void {
  const groups = groupItems(items);
  popup.hidden = groups.length === 0;
  popup.innerHTML = "";
  for (const group of groups) {
    const heading = document.createElement("div");
    heading.className = "popup-kind";
    heading.textContent = group.kind;
    popup.appendChild(heading);
    for (const item of group.items) {
      const row = document.createElement("div");
      row.className = "popup-item";
      row.textContent = item.detail ? `${item.label} — ${item.detail}` : item.label;
      row.addEventListener("mousedown", (event) => {
        event.preventDefault();
        apply(item);
      });
      popup.appendChild(row);
    }
  }
}

function renderOutline(
  root: HTMLUListElement,
  nodes: OutlineNode[],
  vocabInput: HTMLTextAreaElement,
): void {
  root.innerHTML = "";
  const add = (list: HTMLUListElement, node: OutlineNode) => {
    const item = document.createElement("li");
    const label = document.createElement("span");
    label.textContent = node.label;
    label.className = node.line >= 0 ? "outline-decl" : "outline-group";
    if (node.line >= 0) {
      label.addEventListener("click", () => focusLine(vocabInput, node.line));
    }
    item.appendChild(label);
    if (node.children.length > 0) {
      const children = document.createElement("ul");
      node.children.forEach((child) => add(children, child));
      item.appendChild(children);
    }
    list.appendChild(item);
  };
  nodes.forEach((node) => add(root, node));
}

function focusLine(input: HTMLTextAreaElement, line: number): void {
  const lines = input.value.split("\n");
  let start = 0;
  for (let i = 0; i < line && i < lines.length; i++) {
    start += lines[i].length + 1;
  }
  input.focus();
  input.setSelectionRange(start, start + (lines[line]?.length ?? 0));
}

document.addEventListener("DOMContentLoaded", main);
