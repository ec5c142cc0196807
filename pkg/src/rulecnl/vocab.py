"""Business vocabulary: domain terms, proper names, and verb signatures.

A vocabulary grounds everything else — rules may only reference terms,
names and verbs declared here (plus the six built-in comparison verbs).
Vocabularies are immutable after construction and safe to share.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace

from . import diagnostics as diag
from .diagnostics import Diagnostic, Span

_ARTICLES = ("a ", "an ", "the ")
_WS = re.compile(r"\s+")


def _norm(words: str) -> str:
    """Trim and collapse interior whitespace to single spaces."""
    return _WS.sub(" ", words.strip())


def _fold(words: str) -> str:
    return _norm(words).casefold()


@dataclass(frozen=True)
class DomainTerm:
    label: str
    definition: str | None = None
    decl_span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class DomainName:
    label: str
    of_term: str | None = None      # label of the term this name instantiates
    decl_span: Span | None = field(default=None, compare=False, repr=False)


class VerbForm(enum.Enum):
    ACTIVE = "active"
    PASSIVE = "passive"
    BUILTIN = "builtin"


SigKey = tuple[str, str, "str | None"]  # casefolded (subject, verb text, object)


@dataclass(frozen=True)
class VerbSignature:
    subject_term: str               # declared term label
    verb_text: str                  # third-person-singular verb, maybe with function words
    object_term: str | None = None  # absent <=> unary
    form: VerbForm = VerbForm.ACTIVE
    paired_form: SigKey | None = field(default=None, compare=False)
    decl_span: Span | None = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int:
        return 1 if self.object_term is None else 2

    @property
    def key(self) -> SigKey:
        return (
            self.subject_term.casefold(),
            self.verb_text.casefold(),
            self.object_term.casefold() if self.object_term is not None else None,
        )

    def render(self) -> str:
        if self.object_term is None:
            return f"{self.subject_term} {self.verb_text}"
        return f"{self.subject_term} {self.verb_text} {self.object_term}"


#: Reserved noun concept the built-in comparison verbs range over.
QUANTITY = DomainTerm("quantity")

BUILTIN_COMPARISONS: tuple[VerbSignature, ...] = tuple(
    VerbSignature("quantity", text, "quantity", VerbForm.BUILTIN)
    for text in (
        "is equal to",
        "is not equal to",
        "is greater than",
        "is greater than or equal to",
        "is less than",
        "is less than or equal to",
    )
)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[DomainTerm, ...] = ()
    names: tuple[DomainName, ...] = ()
    verbs: tuple[VerbSignature, ...] = ()   # user-declared only
    builtins: tuple[VerbSignature, ...] = BUILTIN_COMPARISONS

    def lookup_term(self, words: str) -> DomainTerm | None:
        """Case-insensitive exact match on the term label; no inflection."""
        wanted = _fold(words)
        for term in self.terms:
            if term.label.casefold() == wanted:
                return term
        if wanted == QUANTITY.label:
            return QUANTITY
        return None

    def lookup_name(self, words: str) -> DomainName | None:
        wanted = _norm(words)
        for name in self.names:
            if name.label == wanted:
                return name
        return None

    def all_signatures(self) -> tuple[VerbSignature, ...]:
        return self.verbs + self.builtins

    def verbs_for_subject(self, subject: DomainTerm) -> list[VerbSignature]:
        """Every signature whose subject is ``subject``, label-sorted.

        The reserved "quantity" subject yields the built-in comparisons.
        """
        wanted = subject.label.casefold()
        found = [s for s in self.verbs if s.subject_term.casefold() == wanted]
        if wanted == QUANTITY.label:
            found.extend(self.builtins)
        found.sort(key=lambda s: (s.verb_text.casefold(), s.object_term or ""))
        return found

    def verb_words(self) -> frozenset[str]:
        """Every casefolded word occurring inside any verb text (builtins included)."""
        words: set[str] = set()
        for sig in self.all_signatures():
            words.update(sig.verb_text.casefold().split())
        return frozenset(words)


EMPTY = Vocabulary()


@dataclass
class VocabResult:
    vocabulary: Vocabulary | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.vocabulary is not None


def parse_vocabulary(source: str) -> VocabResult:
    """Load a vocabulary from its line-oriented text format.

    One declaration per line, ``#`` comments::

        Term: <label>
        Name: <label> [: <term>]
        Verb: <subject term> <verb text> [<object term>]
        Verb(passive): <subject term> <verb text> <object term>

    Verb lines resolve their ends greedily: the longest declared term label
    is matched at each end, the middle becomes the verb text. On failure the
    vocabulary is None and at least one error diagnostic is returned.
    """
    lines = _split_lines(source)
    out: list[Diagnostic] = []

    terms: list[DomainTerm] = []
    seen_terms: dict[str, DomainTerm] = {}
    for text, span in lines:
        head, _, rest = text.partition(":")
        if head.strip() != "Term":
            continue
        label = _norm(rest)
        if not label:
            out.append(diag.error(diag.VOCAB_SYNTAX, "term declaration has no label", span, "vocab"))
            continue
        if label.casefold().startswith(_ARTICLES):
            out.append(diag.error(
                diag.TERM_ARTICLE,
                f'term label must not begin with an article: "{label}"',
                span, "vocab"))
            continue
        if label.casefold() in seen_terms:
            out.append(diag.error(diag.DUP_TERM, f'duplicate term "{label}"', span, "vocab"))
            continue
        term = DomainTerm(label, decl_span=span)
        seen_terms[label.casefold()] = term
        terms.append(term)

    names: list[DomainName] = []
    verbs: list[VerbSignature] = []
    seen_names: set[str] = set()
    seen_sigs: set[SigKey] = set()
    for text, span in lines:
        head, _, rest = text.partition(":")
        head = head.strip()
        if head == "Term":
            continue
        if head == "Name":
            name = _parse_name_line(rest, span, seen_terms, out)
            if name is not None:
                if name.label in seen_names:
                    out.append(diag.error(diag.DUP_NAME, f'duplicate name "{name.label}"', span, "vocab"))
                else:
                    seen_names.add(name.label)
                    names.append(name)
        elif head in ("Verb", "Verb(passive)"):
            sig = _parse_verb_line(rest, span, head == "Verb(passive)", seen_terms, out)
            if sig is not None:
                if sig.key in seen_sigs:
                    out.append(diag.error(diag.DUP_VERB, f'duplicate verb "{sig.render()}"', span, "vocab"))
                else:
                    seen_sigs.add(sig.key)
                    verbs.append(sig)
        else:
            out.append(diag.error(
                diag.VOCAB_SYNTAX,
                'malformed line: expected "Term:", "Name:", "Verb:" or "Verb(passive):"',
                span, "vocab"))

    if any(d.is_error() for d in out):
        return VocabResult(None, out)

    vocabulary = Vocabulary(tuple(terms), tuple(names), tuple(verbs))
    vocabulary, pair_warnings = link_passive_pairs(vocabulary)
    out.extend(pair_warnings)
    return VocabResult(vocabulary, out)


def _split_lines(source: str) -> list[tuple[str, Span]]:
    """Non-blank, non-comment lines with their byte spans (content only)."""
    lines = []
    byte_pos = 0
    for raw in source.split("\n"):
        raw_bytes = len(raw.encode("utf-8"))
        text = raw.split("#", 1)[0]
        stripped = text.strip()
        if stripped:
            lead = len(text[: len(text) - len(text.lstrip())].encode("utf-8"))
            start = byte_pos + lead
            lines.append((stripped, (start, start + len(stripped.encode("utf-8")))))
        byte_pos += raw_bytes + 1  # the split-off newline
    return lines


def _parse_name_line(rest, span, seen_terms, out) -> DomainName | None:
    label, sep, term_part = rest.partition(":")
    label = _norm(label)
    if not label:
        out.append(diag.error(diag.VOCAB_SYNTAX, "name declaration has no label", span, "vocab"))
        return None
    of_term = None
    if sep:
        term_label = _norm(term_part)
        term = seen_terms.get(term_label.casefold())
        if term is None:
            out.append(diag.error(
                diag.UNDECLARED_TERM, f'name references undeclared term "{term_label}"', span, "vocab"))
            return None
        of_term = term.label
    return DomainName(label, of_term, decl_span=span)


def _parse_verb_line(rest, span, passive, seen_terms, out) -> VerbSignature | None:
    words = _norm(rest).split()
    if not words:
        out.append(diag.error(diag.VOCAB_SYNTAX, "verb declaration is empty", span, "vocab"))
        return None

    subject = _longest_term_at(words, seen_terms, prefix=True)
    if subject is None:
        out.append(diag.error(
            diag.UNDECLARED_TERM,
            f'verb subject does not match any declared term: "{" ".join(words)}"',
            span, "vocab"))
        return None
    middle = words[len(subject.label.split()):]

    obj = _longest_term_at(middle, seen_terms, prefix=False)
    if obj is not None:
        middle = middle[: len(middle) - len(obj.label.split())]
    if not middle:
        out.append(diag.error(
            diag.VOCAB_SYNTAX, "verb declaration has no verb text between its terms", span, "vocab"))
        return None
    if passive and obj is None:
        out.append(diag.error(
            diag.VOCAB_SYNTAX, "a passive verb declaration needs subject and object terms", span, "vocab"))
        return None

    return VerbSignature(
        subject.label, " ".join(middle),
        obj.label if obj is not None else None,
        VerbForm.PASSIVE if passive else VerbForm.ACTIVE,
        decl_span=span)


def _longest_term_at(words: list[str], seen_terms: dict[str, DomainTerm], prefix: bool) -> DomainTerm | None:
    for size in range(len(words), 0, -1):
        window = words[:size] if prefix else words[len(words) - size:]
        term = seen_terms.get(" ".join(window).casefold())
        if term is not None:
            return term
    return None


def lookup_term(v: Vocabulary, words: str) -> DomainTerm | None:
    return v.lookup_term(words)


def verbs_for_subject(v: Vocabulary, subject: DomainTerm) -> list[VerbSignature]:
    return v.verbs_for_subject(subject)


def link_passive_pairs(v: Vocabulary) -> tuple[Vocabulary, list[Diagnostic]]:
    """Cross-link declared passive signatures with their active counterparts.

    An active counterpart has the subject and object roles swapped. Unpaired
    passives are kept but flagged with a warning.
    """
    warnings: list[Diagnostic] = []
    linked: list[VerbSignature] = []
    pair_of: dict[SigKey, SigKey] = {}

    for sig in v.verbs:
        if sig.form is not VerbForm.PASSIVE:
            continue
        candidates = [
            a for a in v.verbs
            if a.form is VerbForm.ACTIVE
            and a.object_term is not None
            and a.subject_term.casefold() == (sig.object_term or "").casefold()
            and a.object_term.casefold() == sig.subject_term.casefold()
        ]
        if candidates:
            active = min(candidates, key=lambda a: a.key)
            pair_of[sig.key] = active.key
            pair_of.setdefault(active.key, sig.key)
        else:
            warnings.append(diag.warning(
                diag.UNPAIRED_PASSIVE,
                f'passive verb "{sig.render()}" has no active counterpart',
                sig.decl_span or (0, 0), "vocab"))

    for sig in v.verbs:
        linked.append(replace(sig, paired_form=pair_of.get(sig.key)))
    return replace(v, verbs=tuple(linked)), warnings


def serialize_vocabulary(v: Vocabulary) -> str:
    """Write a vocabulary back out in its file format, canonically ordered.

    ``parse_vocabulary(serialize_vocabulary(v))`` reproduces ``v``.
    """
    out = []
    for term in sorted(v.terms, key=lambda t: t.label.casefold()):
        out.append(f"Term: {term.label}")
    for name in sorted(v.names, key=lambda n: n.label):
        if name.of_term is not None:
            out.append(f"Name: {name.label} : {name.of_term}")
        else:
            out.append(f"Name: {name.label}")
    for sig in sorted(v.verbs, key=lambda s: s.key):
        keyword = "Verb(passive)" if sig.form is VerbForm.PASSIVE else "Verb"
        out.append(f"{keyword}: {sig.render()}")
    return "\n".join(out) + ("\n" if out else "")
