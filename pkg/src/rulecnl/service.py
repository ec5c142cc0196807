"""Editor-facing language service: diagnostics, completion, highlighting
and compilation over (vocabulary text, rule text) pairs.

Stateless and pure: identical requests produce identical results. Rule
documents hold one rule per line; "#" lines are comments. All spans are
byte offsets into the document they belong to (diagnostics say which via
their ``source`` field).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import diagnostics as diag
from .ast import RuleAst
from .binder import bind, candidate_verbs
from .diagnostics import Diagnostic, Span
from .grammar import ExpKind, Expectation, expected_next, parse_rule, stuck_index
from .keywords import ENGLISH, KeywordTable, display_phrase
from .lexer import HighlightClass, Lexer, TokenKind, classify_for_highlighting
from .sbvr import formulate, ruleset_to_xml
from .vocab import EMPTY, Vocabulary, parse_vocabulary


@dataclass(frozen=True)
class CompletionItem:
    label: str
    kind: str                    # Keyword | Quantifier | Term | Name | Verb
    replace_span: Span
    detail: str | None = None


@dataclass
class CompileResult:
    xml: str | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.xml is not None


def _rule_lines(text: str) -> list[tuple[str, int]]:
    """(line, byte offset) for each non-blank, non-comment line."""
    lines = []
    offset = 0
    for raw in text.split("\n"):
        if raw.strip() and not raw.lstrip().startswith("#"):
            lines.append((raw, offset))
        offset += len(raw.encode("utf-8")) + 1
    return lines


def _shift(d: Diagnostic, offset: int) -> Diagnostic:
    return replace(d, span=(d.span[0] + offset, d.span[1] + offset))


def diagnostics(vocab_text: str, rule_text: str,
                keywords: KeywordTable = ENGLISH) -> list[Diagnostic]:
    """Vocabulary, lexing, parse and binding diagnostics, span-sorted."""
    vres = parse_vocabulary(vocab_text)
    out = sorted(vres.diagnostics, key=lambda d: d.span)
    if not vres.ok:
        return out

    lexer = Lexer(vres.vocabulary, keywords)
    suggester = _Suggester(vres.vocabulary, keywords)
    rule_diags: list[Diagnostic] = []
    for line, offset in _rule_lines(rule_text):
        rule_diags.extend(_shift(d, offset) for d in _line_diagnostics(
            line, lexer, vres.vocabulary, suggester, keywords))
    out.extend(sorted(rule_diags, key=lambda d: d.span))
    return out


def _line_diagnostics(line: str, lexer: Lexer, v: Vocabulary,
                      suggester: "_Suggester", keywords: KeywordTable) -> list[Diagnostic]:
    tokens = lexer.tokenize(line)
    found: list[Diagnostic] = []
    for t in tokens:
        if t.kind is TokenKind.UNKNOWN:
            found.append(diag.error(
                diag.UNKNOWN_WORD, suggester.message(t.lexeme), t.span))
    ast = parse_rule(tokens, keywords)
    if isinstance(ast, RuleAst):
        bound = bind(ast, v)
        found.extend(bound if isinstance(bound, list) else bound.warnings)
    else:
        seen = {(d.code, d.span) for d in found}
        found.extend(d for d in ast if (d.code, d.span) not in seen)
    return sorted(found, key=lambda d: d.span)


class _Suggester:
    """Nearest-label suggestions for unknown words (edit distance <= 2)."""

    def __init__(self, v: Vocabulary, keywords: KeywordTable):
        labels = {t.label for t in v.terms}
        labels.update(n.label for n in v.names)
        labels.update(v.verb_words())
        labels.update(keywords.quantifiers)
        labels.update(keywords.coordinators | keywords.subordinators | keywords.determiners)
        self.labels = sorted(labels)

    def message(self, word: str) -> str:
        best, best_distance = None, 3
        folded = word.casefold()
        for label in self.labels:
            d = _edit_distance(folded, label.casefold(), cap=best_distance)
            if d < best_distance:
                best, best_distance = label, d
        text = f'unknown word "{word}"'
        if best is not None:
            text += f'; did you mean "{best}"?'
        return text


def _edit_distance(a: str, b: str, cap: int = 3) -> int:
    if abs(len(a) - len(b)) >= cap:
        return cap
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(min(
                previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        if min(current) >= cap:
            return cap
        previous = current
    return min(previous[-1], cap)


def highlight(vocab_text: str, rule_text: str,
              keywords: KeywordTable = ENGLISH) -> list[tuple[Span, HighlightClass]]:
    """Typography classes for every token of every rule line."""
    vres = parse_vocabulary(vocab_text)
    lexer = Lexer(vres.vocabulary if vres.ok else EMPTY, keywords)
    spans: list[tuple[Span, HighlightClass]] = []
    for line, offset in _rule_lines(rule_text):
        for (start, end), cls in classify_for_highlighting(lexer.tokenize(line)):
            spans.append(((start + offset, end + offset), cls))
    return spans


def compile_rules(vocab_text: str, rule_text: str,
                  keywords: KeywordTable = ENGLISH) -> CompileResult:
    """Compile every rule line; XML only when nothing errored."""
    found = diagnostics(vocab_text, rule_text, keywords)
    if any(d.is_error() for d in found):
        return CompileResult(None, found)

    v = parse_vocabulary(vocab_text).vocabulary
    lexer = Lexer(v, keywords)
    formulations = []
    for line, _ in _rule_lines(rule_text):
        ast = parse_rule(lexer.tokenize(line), keywords)
        bound = bind(ast, v)
        formulations.append(formulate(bound))
    return CompileResult(ruleset_to_xml(formulations), found)


# ---------------------------------------------------------------------------
# Completion


def complete(vocab_text: str, rule_text: str, cursor: int,
             keywords: KeywordTable = ENGLISH) -> list[CompletionItem]:
    """Realize the parser's expectations at the cursor as insertable items.

    The partial word (or phrase) under the cursor filters items by prefix
    and is covered by their replace span. On an unparseable prefix the
    items describe the last recoverable state.
    """
    vres = parse_vocabulary(vocab_text)
    v = vres.vocabulary if vres.ok else EMPTY
    lexer = Lexer(v, keywords)

    data = rule_text.encode("utf-8")
    cursor = max(0, min(cursor, len(data)))
    line_start = data.rfind(b"\n", 0, cursor) + 1
    line_end = data.find(b"\n", cursor)
    if line_end < 0:
        line_end = len(data)
    line = data[line_start:line_end].decode("utf-8")
    if line.lstrip().startswith("#"):
        return []
    prefix = data[line_start:cursor].decode("utf-8", errors="ignore")

    tokens = lexer.tokenize(prefix)
    anchor = stuck_index(tokens, keywords)
    prefix_bytes = len(prefix.encode("utf-8"))
    if anchor == len(tokens) and tokens and tokens[-1].span[1] == prefix_bytes:
        anchor = len(tokens) - 1  # cursor touches the last word: treat as partial
    anchor = min(anchor, len(tokens))

    replace_start = tokens[anchor].span[0] if anchor < len(tokens) else prefix_bytes
    filter_text = " ".join(prefix.encode("utf-8")[replace_start:].decode("utf-8").split())
    span = (line_start + replace_start, cursor)

    expectations = sorted(
        expected_next(tokens, anchor, keywords),
        key=lambda e: (e.kind.value, e.text or "", e.subject_term or "", str(e.verb_context)))
    items: dict[tuple[str, str], CompletionItem] = {}
    rank: dict[tuple[str, str], int] = {}
    for exp in expectations:
        for item, item_rank in _realize(exp, v, span, keywords):
            key = (item.label, item.kind)
            if key not in items or item_rank < rank[key]:
                items[key] = item
                rank[key] = item_rank

    folded = filter_text.casefold()
    chosen = [
        (rank[key], item) for key, item in items.items()
        if item.label.casefold().startswith(folded)
    ]
    if not chosen and folded:
        # nothing extends the text under the cursor: offer the valid
        # continuations of the last recoverable state as replacements
        chosen = [(rank[key], item) for key, item in items.items()]
    chosen.sort(key=lambda pair: (pair[0], pair[1].label.casefold(), pair[1].kind))
    return [item for _, item in chosen]


def _realize(exp: Expectation, v: Vocabulary, span: Span,
             keywords: KeywordTable) -> list[tuple[CompletionItem, int]]:
    if exp.kind is ExpKind.MODALITY:
        return [(CompletionItem(display_phrase(exp.text), "Keyword", span), 1)]
    if exp.kind is ExpKind.KEYWORD:
        return [(CompletionItem(exp.text, "Keyword", span), 1)]
    if exp.kind is ExpKind.QUANTIFIER:
        return [(CompletionItem(q, "Quantifier", span), 1) for q in keywords.quantifiers]
    if exp.kind is ExpKind.DETERMINER:
        words = sorted(keywords.determiners - set(keywords.quantifiers))
        return [(CompletionItem(w, "Keyword", span), 1) for w in words]
    if exp.kind is ExpKind.TERM:
        preferred = _preferred_object_terms(exp, v)
        out = []
        for term in v.terms:
            item_rank = 0 if term.label.casefold() in preferred else 1
            out.append((CompletionItem(term.label, "Term", span, term.definition), item_rank))
        return out
    if exp.kind is ExpKind.NAME:
        return [
            (CompletionItem(
                name.label, "Name", span,
                f"name of {name.of_term}" if name.of_term else None), 1)
            for name in v.names
        ]
    if exp.kind is ExpKind.VERB_WORD:
        subject = v.lookup_term(exp.subject_term) if exp.subject_term else None
        signatures = v.verbs_for_subject(subject) if subject is not None else list(v.verbs)
        return [
            (CompletionItem(sig.verb_text, "Verb", span, sig.render()), 1)
            for sig in signatures
        ]
    return []  # numbers and strings are free-form


def _preferred_object_terms(exp: Expectation, v: Vocabulary) -> frozenset[str]:
    if exp.verb_context is None:
        return frozenset()
    subject_label, verb_words = exp.verb_context
    if not verb_words:
        return frozenset()
    subject = v.lookup_term(subject_label) if subject_label else None
    return frozenset(
        sig.object_term.casefold()
        for sig in candidate_verbs(v, subject, list(verb_words))
        if sig.object_term is not None
    )


# ---------------------------------------------------------------------------
# Wire format (shared by the HTTP server and the CLI)


def diagnostic_wire(d: Diagnostic) -> dict:
    return {
        "severity": d.severity.value,
        "code": d.code,
        "message": d.message,
        "start": d.span[0],
        "end": d.span[1],
        "source": d.source,
    }


def completion_wire(item: CompletionItem) -> dict:
    return {
        "label": item.label,
        "kind": item.kind,
        "detail": item.detail,
        "replaceStart": item.replace_span[0],
        "replaceEnd": item.replace_span[1],
    }


def highlight_wire(span_class: tuple[Span, HighlightClass]) -> dict:
    (start, end), cls = span_class
    return {"start": start, "end": end, "class": cls.value}
