/**
 * Tree outline of the vocabulary text: terms as parents with their verbs
 * as children, names in their own branch, plus the built-in comparisons.
 *
 * This is a presentational line scan only — whether the vocabulary is
 * VALID comes from the service's diagnostics; with vocabulary errors the
 * outline is replaced by the error list.
 */

export interface OutlineNode {
  label: string;
  line: number; // 0-based declaration line, -1 for synthetic nodes
  children: OutlineNode[];
}

export const BUILTIN_COMPARISONS = [
  "quantity is equal to quantity",
  "quantity is not equal to quantity",
  "quantity is greater than quantity",
  "quantity is greater than or equal to quantity",
  "quantity is less than quantity",
  "quantity is less than or equal to quantity",
];

export function buildOutline(vocabText: string): OutlineNode[] {
  const terms: OutlineNode[] = [];
  const names: OutlineNode[] = [];
  const verbs: { text: string; line: number }[] = [];

  vocabText.split("\n").forEach((raw, line) => {
    const text = raw.split("#", 1)[0].trim();
    if (!text) return;
    const colon = text.indexOf(":");
    if (colon < 0) return;
    const head = text.slice(0, colon).trim();
    const rest = text.slice(colon + 1).trim();
    if (head === "Term") {
      terms.push({ label: rest, line, children: [] });
    } else if (head === "Name") {
      names.push({ label: rest.split(":", 1)[0].trim(), line, children: [] });
    } else if (head === "Verb" || head === "Verb(passive)") {
      verbs.push({ text: rest, line });
    }
  });

  // attach each verb under the longest term label prefixing it
  const byLength = [...terms].sort((a, b) => b.label.length - a.label.length);
  const unattached: OutlineNode[] = [];
  for (const verb of verbs) {
    const owner = byLength.find(
      (t) =>
        verb.text.toLowerCase() === t.label.toLowerCase() ||
        verb.text.toLowerCase().startsWith(t.label.toLowerCase() + " "),
    );
    const node = { label: verb.text, line: verb.line, children: [] };
    (owner ? owner.children : unattached).push(node);
  }

  const roots: OutlineNode[] = [...terms];
  if (names.length > 0) {
    roots.push({ label: "Names", line: -1, children: names });
  }
  roots.push({
    label: "Built-in comparisons",
    line: -1,
    children: BUILTIN_COMPARISONS.map((label) => ({ label, line: -1, children: [] })),
  });
  if (unattached.length > 0) {
    roots.push({ label: "Other verbs", line: -1, children: unattached });
  }
  return roots;
}
