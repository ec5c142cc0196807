"""Recursive-descent parser for rule statements.

Grammar (normative for this toolchain)::

    rule          = modality , statement ;
    statement     = junction , { "if" , junction } ;        (* right-assoc *)
    junction      = simple , { ("and"|"or") , simple } ;    (* and > or *)
    simple        = nounPhrase , predicateList ;
    predicateList = predicate , { ("and"|"or") , predicate } ;
    predicate     = verbWords , [ object ] ;
    object        = nounPhrase | string | number ;
    nounPhrase    = [ determiner ] , termWords , [ string ] , [ qualifier ] ;
    qualifier     = ("who"|"that"|"which") , predicateList ;
    determiner    = "each" | "a" | "an" | "the" | "some" | "at least one"
                  | ("at least"|"at most"|"exactly") , number ;

"A if B" means Conditional(condition=B, consequence=A). An "and"/"or" after
a predicate continues the predicate list when a verb word follows and starts
a new simple statement when a noun phrase follows (one token of lookahead),
so the grammar stays deterministic.

The same parser runs in probe mode to compute ``expected_next``: every
lookahead helper records what it would have accepted whenever it inspects
the position just past the probe prefix, so the expectation set is exactly
what the parser can consume there — no heuristics.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from . import diagnostics as diag
from .ast import (
    BARE, Conditional, Determiner, DeterminerKind, Junction, Modality, NounPhrase,
    NumberObject, Predicate, Qualifier, RuleAst, Simple, Statement, StringObject,
)
from .diagnostics import Diagnostic
from .keywords import ENGLISH, KeywordTable
from .lexer import Token, TokenKind


class ExpKind(enum.Enum):
    MODALITY = "modality"
    QUANTIFIER = "quantifier"
    DETERMINER = "determiner"
    TERM = "term"
    NAME = "name"
    VERB_WORD = "verb"
    NUMBER = "number"
    STRING = "string"
    KEYWORD = "keyword"


@dataclass(frozen=True)
class Expectation:
    """One kind of token the parser can accept at a position.

    ``text`` names the concrete phrase for MODALITY/KEYWORD expectations.
    ``subject_term``/``verb_context`` carry the parse state a completion
    provider needs to rank vocabulary items (the clause's subject term, and
    for object positions the pending (subject, verb words) pair).
    """
    kind: ExpKind
    text: str | None = None
    subject_term: str | None = None
    verb_context: "tuple[str | None, tuple[str, ...]] | None" = None

    @property
    def basic(self) -> tuple[ExpKind, str | None]:
        return (self.kind, self.text)


class _Fail(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


_INT = re.compile(r"\d+\Z")


class _Parser:
    def __init__(self, tokens, keywords: KeywordTable, probing: bool = False):
        self.toks: list[Token] = list(tokens)
        self.kw = keywords
        self.probing = probing
        self.expected: set[Expectation] = set()
        self.pos = 0

    # ------------------------------------------------------------- plumbing

    def _peek(self) -> Token | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def _probe(self, *exps: Expectation) -> None:
        if self.probing and self.pos == len(self.toks):
            self.expected.update(exps)

    def _end_span(self) -> tuple[int, int]:
        if self.toks:
            end = self.toks[-1].span[1]
            return (end, end)
        return (0, 0)

    def _fail(self, code: str, message: str) -> "_Fail":
        t = self._peek()
        if t is not None and t.kind is TokenKind.UNKNOWN:
            return _Fail(diag.error(diag.UNKNOWN_WORD, f'unknown word "{t.lexeme}"', t.span))
        return _Fail(diag.error(code, message, t.span if t is not None else self._end_span()))

    def _span_from(self, start_index: int) -> tuple[int, int]:
        last = self.toks[self.pos - 1] if self.pos > 0 else None
        if last is None or start_index >= self.pos:
            return self._end_span()
        return (self.toks[start_index].span[0], last.span[1])

    # ------------------------------------------------------------ lookahead

    def _at_keyword(self, word: str) -> bool:
        self._probe(Expectation(ExpKind.KEYWORD, word))
        t = self._peek()
        return t is not None and t.kind is TokenKind.KEYWORD and t.norm == word

    def _at_rel_pronoun(self) -> bool:
        self._probe(*(Expectation(ExpKind.KEYWORD, w) for w in sorted(self.kw.relative_pronouns())))
        t = self._peek()
        return (t is not None and t.kind is TokenKind.KEYWORD
                and t.norm in self.kw.relative_pronouns())

    def _at_coordinator(self) -> bool:
        self._probe(*(Expectation(ExpKind.KEYWORD, w) for w in sorted(self.kw.coordinators)))
        t = self._peek()
        return (t is not None and t.kind is TokenKind.KEYWORD
                and t.norm in self.kw.coordinators)

    def _at_verb_word(self, subject_term: str | None) -> bool:
        self._probe(Expectation(ExpKind.VERB_WORD, subject_term=subject_term))
        t = self._peek()
        return t is not None and t.kind is TokenKind.VERB_WORD

    def _starts_noun_phrase(self, ctx=None) -> bool:
        self._probe(
            Expectation(ExpKind.QUANTIFIER),
            Expectation(ExpKind.DETERMINER),
            Expectation(ExpKind.TERM, verb_context=ctx),
            Expectation(ExpKind.NAME, verb_context=ctx),
        )
        t = self._peek()
        if t is None:
            return False
        if t.kind in (TokenKind.QUANTIFIER, TokenKind.TERM_REF, TokenKind.NAME_REF):
            return True
        return t.kind is TokenKind.KEYWORD and t.norm in self.kw.determiners

    def _at_string(self, ctx=None) -> bool:
        self._probe(Expectation(ExpKind.STRING, verb_context=ctx))
        t = self._peek()
        return t is not None and t.kind is TokenKind.STRING

    def _at_number(self, ctx=None) -> bool:
        self._probe(Expectation(ExpKind.NUMBER, verb_context=ctx))
        t = self._peek()
        return t is not None and t.kind is TokenKind.NUMBER

    # -------------------------------------------------------------- grammar

    def parse_rule(self) -> RuleAst:
        self._probe(*(Expectation(ExpKind.MODALITY, p) for p in self.kw.modality_phrases()))
        t = self._peek()
        if t is None or t.kind is not TokenKind.KEYWORD or t.norm not in self.kw.modalities:
            raise self._fail(
                diag.MISSING_MODALITY,
                "a rule must start with a modality phrase such as "
                f'"{next(iter(self.kw.modalities))}"')
        self._advance()
        modality = self.kw.modalities[t.norm]
        statement = self.parse_statement()

        leftover = self._peek()
        if leftover is not None:
            if leftover.kind is TokenKind.UNKNOWN:
                raise self._fail(diag.UNKNOWN_WORD, "")
            if leftover.kind is TokenKind.KEYWORD and leftover.norm in self.kw.coordinators:
                self._advance()  # the coordinator reads fine; what follows it doesn't
                raise _Fail(diag.error(
                    diag.DANGLING_COORDINATOR,
                    f'"{leftover.norm}" is not followed by a statement or predicate',
                    leftover.span))
            raise _Fail(diag.error(
                diag.TRAILING_INPUT, f'unexpected input after the rule: "{leftover.lexeme}"',
                leftover.span))
        return RuleAst(
            modality, statement,
            modality_text=" ".join(t.lexeme.split()),
            source_span=(t.span[0], self.toks[-1].span[1]))

    def parse_statement(self) -> Statement:
        start = self.pos
        consequence = self.parse_junction()
        if self._at_keyword("if"):
            self._advance()
            condition = self.parse_statement()  # right-assoc: A if B if C = A if (B if C)
            return Conditional(condition, consequence, self._span_from(start))
        return consequence

    def parse_junction(self) -> Statement:
        start = self.pos
        operands = [self._parse_and_level()]
        while self._at_keyword("or"):
            save = self.pos
            self._advance()
            if not self._starts_noun_phrase():
                self.pos = save
                break
            operands.append(self._parse_and_level())
        if len(operands) == 1:
            return operands[0]
        return Junction("or", tuple(operands), self._span_from(start))

    def _parse_and_level(self) -> Statement:
        start = self.pos
        operands = [self.parse_simple()]
        while self._at_keyword("and"):
            save = self.pos
            self._advance()
            if not self._starts_noun_phrase():
                self.pos = save
                break
            operands.append(self.parse_simple())
        if len(operands) == 1:
            return operands[0]
        return Junction("and", tuple(operands), self._span_from(start))

    def parse_simple(self) -> Simple:
        start = self.pos
        subject = self.parse_noun_phrase()
        predicates, ops = self.parse_predicate_list(subject.term_label)
        return Simple(subject, predicates, ops, self._span_from(start))

    def parse_predicate_list(self, subject_term: str | None):
        predicates = [self.parse_predicate(subject_term)]
        ops: list[str] = []
        while self._at_coordinator():
            save = self.pos
            op = self._advance().norm
            if self._at_verb_word(subject_term):
                ops.append(op)
                predicates.append(self.parse_predicate(subject_term))
                continue
            if self._peek() is None:
                self._starts_noun_phrase()  # a new statement could follow too
                raise _Fail(diag.error(
                    diag.DANGLING_COORDINATOR,
                    f'"{op}" is not followed by a statement or predicate',
                    self.toks[save].span))
            self.pos = save
            break
        return tuple(predicates), tuple(ops)

    def parse_predicate(self, subject_term: str | None) -> Predicate:
        start = self.pos
        words: list[str] = []
        while self._at_verb_word(subject_term):
            words.append(self._advance().norm)
        if not words:
            raise self._fail(
                diag.EXPECTED_VERB,
                "expected a verb from the vocabulary"
                + (f' for subject "{subject_term}"' if subject_term else ""))

        ctx = (subject_term, tuple(words))
        obj = None
        if self._starts_noun_phrase(ctx):
            obj = self.parse_noun_phrase(ctx)
        elif self._at_string(ctx):
            t = self._advance()
            obj = StringObject(t.norm, t.span)
        elif self._at_number(ctx):
            t = self._advance()
            obj = NumberObject(t.norm, t.span)
        return Predicate(tuple(words), obj, self._span_from(start))

    def parse_noun_phrase(self, ctx=None) -> NounPhrase:
        start = self.pos
        det = self.parse_determiner()

        if det.kind is DeterminerKind.BARE:
            self._probe(Expectation(ExpKind.NAME, verb_context=ctx))
            t = self._peek()
            if t is not None and t.kind is TokenKind.NAME_REF:
                self._advance()
                return NounPhrase(
                    BARE, "", name_label=t.resolved.label, span=self._span_from(start))

        self._probe(Expectation(ExpKind.TERM, verb_context=ctx))
        t = self._peek()
        if t is None or t.kind is not TokenKind.TERM_REF:
            raise self._fail(diag.EXPECTED_NOUN_PHRASE, "expected a term from the vocabulary")
        self._advance()
        term_words = " ".join(t.lexeme.split())
        term_label = t.resolved.label

        instance = None
        if self._at_string():
            instance = self._advance().norm

        qualifier = None
        if self._at_rel_pronoun():
            pronoun = self._advance().norm
            predicates, ops = self.parse_predicate_list(term_label)
            qualifier = Qualifier(pronoun, predicates, ops)

        return NounPhrase(det, term_words, term_label, instance, qualifier,
                          span=self._span_from(start))

    def parse_determiner(self) -> Determiner:
        self._probe(Expectation(ExpKind.QUANTIFIER), Expectation(ExpKind.DETERMINER))
        t = self._peek()
        if t is None:
            return BARE
        text = " ".join(t.lexeme.split())
        if t.kind is TokenKind.QUANTIFIER:
            if t.norm == "each":
                self._advance()
                return Determiner(DeterminerKind.UNIVERSAL, text=text)
            if t.norm in ("some", "at least one"):
                self._advance()
                return Determiner(DeterminerKind.AT_LEAST_ONE, text=text)
            kind = {
                "at least": DeterminerKind.AT_LEAST_N,
                "at most": DeterminerKind.AT_MOST_N,
                "exactly": DeterminerKind.EXACTLY_N,
            }.get(t.norm)
            if kind is not None:
                self._advance()
                return Determiner(kind, self._parse_count(t), text=text)
            return BARE
        if t.kind is TokenKind.KEYWORD:
            if t.norm in ("a", "an"):
                self._advance()
                return Determiner(DeterminerKind.AT_LEAST_ONE, text=text)
            if t.norm == "the":
                self._advance()
                return Determiner(DeterminerKind.DEFINITE, text=text)
        return BARE

    def _parse_count(self, quant_token: Token) -> int:
        self._probe(Expectation(ExpKind.NUMBER))
        t = self._peek()
        if t is None or t.kind is not TokenKind.NUMBER:
            raise self._fail(
                diag.BAD_QUANTIFIER, f'expected a count after "{quant_token.norm}"')
        if not _INT.match(t.norm) or int(t.norm) < 1:
            raise _Fail(diag.error(
                diag.BAD_QUANTIFIER,
                f'quantifier count must be a positive integer, got "{t.norm}"', t.span))
        self._advance()
        return int(t.norm)


def parse_rule(tokens: list[Token], keywords: KeywordTable = ENGLISH) -> "RuleAst | list[Diagnostic]":
    """Parse one rule's token stream into its tree, or return diagnostics."""
    parser = _Parser(tokens, keywords)
    try:
        return parser.parse_rule()
    except _Fail as failure:
        return [failure.diagnostic]


def expected_next(tokens: list[Token], prefix_len: int,
                  keywords: KeywordTable = ENGLISH) -> frozenset[Expectation]:
    """Everything the parser can accept after the first ``prefix_len`` tokens.

    Runs the parser in probe mode over the prefix; an empty set means no
    single token can extend the prefix toward a parse.
    """
    parser = _Parser(tokens[:prefix_len], keywords, probing=True)
    try:
        parser.parse_rule()
    except _Fail:
        pass
    return frozenset(parser.expected)


def stuck_index(tokens: list[Token], keywords: KeywordTable = ENGLISH) -> int:
    """Index of the token where parsing fails, or len(tokens) on success.

    Completion uses this to find the last recoverable state in a prefix.
    """
    parser = _Parser(tokens, keywords)
    try:
        parser.parse_rule()
    except _Fail:
        return parser.pos
    return len(tokens)
