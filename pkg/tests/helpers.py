"""Shared test machinery: a grammar-driven corpus generator over random
vocabularies, and independent brute-force oracles the implementation is
checked against.
"""

from __future__ import annotations

import itertools
import random
import re

from rulecnl.keywords import ENGLISH, display_phrase
from rulecnl.ast import NounPhrase, RuleAst
from rulecnl.vocab import (
    BUILTIN_COMPARISONS, DomainName, DomainTerm, VerbForm, VerbSignature,
    Vocabulary, link_passive_pairs,
)

TERM_WORDS = ["alpha", "bravo", "delta", "echo", "golf", "hotel", "india", "kilo"]
VERB_WORDS = ["links", "manages", "covers", "follows", "inspects", "owns",
              "marks", "sends", "tracks", "grades", "reports to", "belongs to"]
PASSIVE_MIDDLES = ["linked", "managed", "covered", "followed", "inspected", "owned"]
NAME_LABELS = ["Avalon", "Borealis", "Cascadia"]


def random_vocabulary(rng: random.Random, max_terms: int = 10) -> Vocabulary:
    """A structurally valid vocabulary with unique (subject, verb text) pairs."""
    n_terms = rng.randint(2, max_terms)
    labels = set()
    while len(labels) < n_terms:
        if rng.random() < 0.3:
            labels.add(" ".join(rng.sample(TERM_WORDS, 2)))
        else:
            labels.add(rng.choice(TERM_WORDS))
    terms = tuple(DomainTerm(lbl) for lbl in sorted(labels))

    verbs: list[VerbSignature] = []
    used_pairs = set()
    for _ in range(rng.randint(2, 8)):
        subject = rng.choice(terms)
        text = rng.choice(VERB_WORDS)
        if (subject.label, text) in used_pairs:
            continue
        used_pairs.add((subject.label, text))
        if rng.random() < 0.35:
            verbs.append(VerbSignature(subject.label, text))
        else:
            verbs.append(VerbSignature(subject.label, text, rng.choice(terms).label))

    if verbs and rng.random() < 0.4:
        active = rng.choice([s for s in verbs if s.object_term is not None] or verbs)
        if active.object_term is not None:
            text = f"is {rng.choice(PASSIVE_MIDDLES)} by"
            if (active.object_term, text) not in used_pairs:
                used_pairs.add((active.object_term, text))
                verbs.append(VerbSignature(
                    active.object_term, text, active.subject_term, VerbForm.PASSIVE))

    names = tuple(
        DomainName(label, rng.choice(terms).label if rng.random() < 0.7 else None)
        for label in rng.sample(NAME_LABELS, rng.randint(0, 2))
    )
    vocabulary, _ = link_passive_pairs(Vocabulary(terms, names, tuple(verbs)))
    return vocabulary


class RuleGenerator:
    """Emits valid rule texts for a vocabulary, left to right, so definite
    references always point at an earlier mention."""

    def __init__(self, vocabulary: Vocabulary, rng: random.Random):
        self.v = vocabulary
        self.rng = rng
        self.subjects = sorted({s.subject_term for s in vocabulary.verbs})
        self.mentioned: list[str] = []

    def rule(self) -> str:
        if not self.subjects:
            raise ValueError("vocabulary has no verbs to build rules from")
        self.mentioned = []
        modality = display_phrase(self.rng.choice(list(ENGLISH.modalities)))
        roll = self.rng.random()
        if roll < 0.15:
            consequence = self.simple()
            condition = self.simple()
            statement = f"{consequence} if {condition}"
        elif roll < 0.30:
            op = self.rng.choice(["and", "or"])
            statement = f"{self.simple()} {op} {self.simple()}"
        else:
            statement = self.simple()
        return f"{modality} {statement}"

    def simple(self) -> str:
        subject = self.rng.choice(self.subjects)
        parts = [self.noun_phrase(subject, allow_qualifier=False)[0]]
        text, capturable = self.predicate(subject, depth=0)
        parts.append(text)
        # a trailing qualifier would greedily capture a coordinated predicate
        if not capturable and self.rng.random() < 0.25:
            parts.append(self.rng.choice(["and", "or"]))
            parts.append(self.predicate(subject, depth=0)[0])
        return " ".join(parts)

    def predicate(self, subject_label: str, depth: int) -> tuple[str, bool]:
        """(text, ends-inside-a-qualifier)."""
        if self.rng.random() < 0.15:
            comparison = self.rng.choice(BUILTIN_COMPARISONS)
            return f"{comparison.verb_text} {self.rng.randint(0, 99)}", False
        options = self.v.verbs_for_subject(self.v.lookup_term(subject_label))
        options = [s for s in options if s.form.value != "builtin"]
        sig = self.rng.choice(options)
        if sig.object_term is None:
            if self.rng.random() < 0.5:
                return f"is {sig.verb_text}", False
            return sig.verb_text, False
        obj, qualified = self.noun_phrase(
            sig.object_term, allow_qualifier=depth < 2, depth=depth)
        return f"{sig.verb_text} {obj}", qualified

    def noun_phrase(self, term_label: str, allow_qualifier: bool,
                    depth: int = 0) -> tuple[str, bool]:
        qualifier = ""
        can_qualify = allow_qualifier and any(
            s.form.value != "builtin"
            for s in self.v.verbs_for_subject(self.v.lookup_term(term_label)))
        use_qualifier = can_qualify and self.rng.random() < 0.3

        folded = term_label.casefold()
        if folded in self.mentioned and not use_qualifier and self.rng.random() < 0.4:
            determiner = "the"
        else:
            determiner = self.rng.choice(
                ["each", "a", "an", "some", "at least one",
                 f"at least {self.rng.randint(1, 5)}",
                 f"at most {self.rng.randint(1, 5)}",
                 f"exactly {self.rng.randint(1, 5)}"])
        self.mentioned.append(folded)
        if use_qualifier:
            pronoun = self.rng.choice(["who", "that", "which"])
            qualifier = f" {pronoun} {self.predicate(term_label, depth + 1)[0]}"
        return f"{determiner} {term_label}{qualifier}", bool(qualifier)


def corpus(seed: int, vocabularies: int, rules_each: int):
    """Deterministic (vocabulary, rule text) pairs for property suites."""
    rng = random.Random(seed)
    out = []
    for _ in range(vocabularies):
        v = random_vocabulary(rng)
        if not v.verbs:
            continue
        gen = RuleGenerator(v, rng)
        for _ in range(rules_each):
            out.append((v, gen.rule()))
    return out


# ---------------------------------------------------------------------------
# Independent tokenizer oracles


_PRIORITY = ["keyword", "term", "name", "verb", "number"]


def _oracle_tables(vocabulary: Vocabulary, keywords=ENGLISH):
    kw_phrases = [(p.split(), "keyword") for p in keywords.modalities]
    kw_phrases += [(p.split(), "keyword") for p in keywords.quantifiers]
    kw_phrases += [([w], "keyword") for w in
                   keywords.coordinators | keywords.subordinators | keywords.determiners]
    term_phrases = [(t.label.casefold().split(), t.label) for t in vocabulary.terms]
    term_phrases.append((["quantity"], "quantity"))
    name_phrases = [(n.label.split(), n.label) for n in vocabulary.names]
    verb_words = set()
    for sig in vocabulary.verbs + vocabulary.builtins:
        verb_words.update(sig.verb_text.casefold().split())
    return kw_phrases, term_phrases, name_phrases, verb_words


def _matches_at(words, i, tables):
    """All (size, priority index, kind) matches at word position i."""
    kw_phrases, term_phrases, name_phrases, verb_words = tables
    found = []
    for phrase, _ in kw_phrases:
        size = len(phrase)
        if [w.casefold() for w in words[i:i + size]] == phrase:
            found.append((size, 0, "keyword"))
    for phrase, _ in term_phrases:
        size = len(phrase)
        if [w.casefold() for w in words[i:i + size]] == phrase:
            found.append((size, 1, "term"))
    for phrase, _ in name_phrases:
        size = len(phrase)
        if words[i:i + size] == phrase:
            found.append((size, 2, "name"))
    if words[i].casefold() in verb_words:
        found.append((1, 3, "verb"))
    if re.fullmatch(r"\d+(\.\d+)?", words[i]):
        found.append((1, 4, "number"))
    return found


def greedy_oracle(source: str, vocabulary: Vocabulary, keywords=ENGLISH):
    """Leftmost-longest scan over naive match lists (no shared lexer code).

    Returns (kind, joined words) pairs; quoted strings are out of scope here
    (the corpus for oracle comparison contains none).
    """
    tables = _oracle_tables(vocabulary, keywords)
    words = source.split()
    out = []
    i = 0
    while i < len(words):
        found = _matches_at(words, i, tables)
        if not found:
            out.append(("unknown", words[i].casefold()))
            i += 1
            continue
        size, _, kind = max(found, key=lambda m: (m[0], -m[1]))
        out.append((kind, " ".join(w.casefold() for w in words[i:i + size])))
        i += size
    return out


def enumeration_oracle(source: str, vocabulary: Vocabulary, keywords=ENGLISH):
    """Enumerate every tokenization, then pick the leftmost-longest one.

    Exponential; only for short sources. A tokenization beats another if, at
    the first position they differ, its token is longer (ties by priority).
    """
    tables = _oracle_tables(vocabulary, keywords)
    words = source.split()

    def all_tokenizations(i):
        if i == len(words):
            yield []
            return
        options = _matches_at(words, i, tables) or []
        # the unknown single word is always a possible (worst) reading
        options = options + [(1, len(_PRIORITY), "unknown")]
        for size, prio, kind in options:
            for rest in all_tokenizations(i + size):
                yield [(size, prio, kind, i)] + rest

    def key(tokenization):
        # prefer longer tokens, then lower priority index, position by position
        return [(-size, prio) for size, prio, _, _ in tokenization]

    best = min(all_tokenizations(0), key=key)
    return [
        (kind, " ".join(w.casefold() for w in words[i:i + size]))
        for size, _, kind, i in best
    ]


def token_kinds(tokens):
    """(kind, norm) pairs of a lexer run, in the oracle's vocabulary."""
    kind_name = {
        "keyword": "keyword", "quantifier": "keyword", "term": "term",
        "name": "name", "verb": "verb", "number": "number",
        "string": "string", "unknown": "unknown",
    }
    return [(kind_name[t.kind.value], t.norm) for t in tokens]


def word_sources(alphabet, max_words):
    """Every word sequence over ``alphabet`` with 0..max_words words."""
    for length in range(max_words + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield " ".join(combo)


# ---------------------------------------------------------------------------
# Independent binding oracle

def brute_force_compatible(v: Vocabulary, bound_rule: BoundRule, pred, subject_np):
    """Independent enumeration: every signature compatible with the clause."""
    joined = " ".join(w.casefold() for w in pred.verb_words)
    stripped = joined[3:] if joined.startswith("is ") else None
    if subject_np.term_label is not None:
        subject = subject_np.term_label.casefold()
    else:
        name = next(n for n in v.names if n.label == subject_np.name_label)
        subject = name.of_term.casefold() if name.of_term else None

    matches = []
    for sig in v.verbs + v.builtins:
        text_ok = sig.verb_text.casefold() == joined or (
            stripped is not None and sig.object_term is None
            and sig.verb_text.casefold() == stripped)
        if not text_ok:
            continue
        if sig.form is not VerbForm.BUILTIN and subject is not None \
                and sig.subject_term.casefold() != subject:
            continue
        obj = pred.object
        if obj is None:
            if sig.object_term is not None:
                continue
        else:
            if sig.object_term is None:
                continue
            if sig.form is not VerbForm.BUILTIN and isinstance(obj, NounPhrase) \
                    and obj.term_label is not None \
                    and sig.object_term.casefold() != obj.term_label.casefold():
                continue
        matches.append(sig)
    exact = [s for s in matches if s.form is not VerbForm.BUILTIN]
    return exact or matches


def clause_pairs(node, subject=None):
    """(subject noun phrase, predicate) pairs, qualifiers included."""
    from rulecnl.ast import Conditional, Junction, Simple

    out = []
    if isinstance(node, RuleAst):
        out += clause_pairs(node.statement)
    elif isinstance(node, Conditional):
        out += clause_pairs(node.condition) + clause_pairs(node.consequence)
    elif isinstance(node, Junction):
        for operand in node.operands:
            out += clause_pairs(operand)
    elif isinstance(node, Simple):
        out += _npclause_pairs(node.subject)
        for pred in node.predicates:
            out.append((node.subject, pred))
            if isinstance(pred.object, NounPhrase):
                out += _npclause_pairs(pred.object)
    return out


def _npclause_pairs(np):
    out = []
    if np.qualifier is not None:
        for pred in np.qualifier.predicates:
            out.append((np, pred))
            if isinstance(pred.object, NounPhrase):
                out += _npclause_pairs(pred.object)
    return out
