/**
 * Completion popup model: the service's items grouped by kind, and the
 * splice that applies one to the rule text.
 */

import type { CompletionItem, CompletionKind } from "./api.js";
import { byteToChar } from "./offsets.js";

export interface CompletionGroup {
  kind: CompletionKind;
  items: CompletionItem[];
}

const GROUP_ORDER: CompletionKind[] = ["Verb", "Term", "Name", "Quantifier", "Keyword"];

/** Group items for display, preserving the service's order inside groups. */
export function groupItems(items: CompletionItem[]): CompletionGroup[] {
  const groups: CompletionGroup[] = [];
  for (const kind of GROUP_ORDER) {
    const matching = items.filter((i) => i.kind === kind);
    if (matching.length > 0) {
      groups.push({ kind, items: matching });
    }
  }
  return groups;
}

export interface SpliceResult {
  text: string;
  cursor: number; // UTF-16 index just after the inserted label
}

/** Replace the item's span (byte offsets) with its label. */
export function splice(text: string, item: CompletionItem): SpliceResult {
  const start = byteToChar(text, item.replaceStart);
  const end = byteToChar(text, item.replaceEnd);
  const next = text.slice(0, start) + item.label + text.slice(end);
  return { text: next, cursor: start + item.label.length };
}
