"""Vocabulary-driven lexer.

Rule text is split on whitespace and re-joined into tokens by longest match
against keyword/quantifier phrases, term labels, name labels and verb words.
At equal length the tie-break is keyword/quantifier > term > name > verb
word > number. Unlexable words come out as Unknown tokens rather than
errors; spans are byte offsets into the UTF-8 source and a token stream
always reproduces its source exactly (tokens plus skipped whitespace).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .diagnostics import Span
from .keywords import ENGLISH, KeywordTable
from .vocab import QUANTITY, DomainName, DomainTerm, Vocabulary


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    QUANTIFIER = "quantifier"
    TERM_REF = "term"
    NAME_REF = "name"
    VERB_WORD = "verb"
    NUMBER = "number"
    STRING = "string"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str                 # exact source slice
    span: Span                  # byte offsets
    norm: str = ""              # single-spaced, casefolded (strings: unquoted value)
    resolved: "DomainTerm | DomainName | None" = None


class HighlightClass(enum.Enum):
    TERM = "Term"
    VERB = "Verb"
    PARTICLE = "Particle"
    LITERAL = "Literal"
    ERROR = "Error"


_NUMBER = re.compile(r"\d+(\.\d+)?\Z")
_WORD = re.compile(r"\S+")


@dataclass(frozen=True)
class _Word:
    text: str
    char_start: int
    char_end: int
    byte_start: int
    byte_end: int


def _split_words(source: str) -> list[_Word]:
    words = []
    byte_pos = 0
    char_pos = 0
    for m in _WORD.finditer(source):
        byte_pos += len(source[char_pos:m.start()].encode("utf-8"))
        nbytes = len(m.group().encode("utf-8"))
        words.append(_Word(m.group(), m.start(), m.end(), byte_pos, byte_pos + nbytes))
        byte_pos += nbytes
        char_pos = m.end()
    return words


class Lexer:
    """Reusable tokenizer for one (vocabulary, keyword table) pair."""

    def __init__(self, vocabulary: Vocabulary, keywords: KeywordTable = ENGLISH):
        self.vocabulary = vocabulary
        self.keywords = keywords

        self._kw: dict[tuple[str, ...], TokenKind] = {}
        for phrase in keywords.modalities:
            self._kw[tuple(phrase.split())] = TokenKind.KEYWORD
        for word in keywords.coordinators | keywords.subordinators | keywords.determiners:
            self._kw[(word,)] = TokenKind.KEYWORD
        for phrase in keywords.quantifiers:  # quantifier kind wins for words like "each"
            self._kw[tuple(phrase.split())] = TokenKind.QUANTIFIER

        self._terms: dict[tuple[str, ...], DomainTerm] = {
            tuple(t.label.casefold().split()): t for t in vocabulary.terms
        }
        self._terms.setdefault((QUANTITY.label,), QUANTITY)
        self._names: dict[tuple[str, ...], DomainName] = {
            tuple(n.label.split()): n for n in vocabulary.names
        }
        self._verb_words = vocabulary.verb_words()
        self._max_len = max(
            (len(k) for table in (self._kw, self._terms, self._names) for k in table),
            default=1)

    def tokenize(self, source: str) -> list[Token]:
        words = _split_words(source)
        tokens: list[Token] = []
        i = 0
        while i < len(words):
            if words[i].text.startswith('"'):
                token, i = self._string_token(source, words, i)
                tokens.append(token)
                continue
            token, i = self._match_at(source, words, i)
            tokens.append(token)
        return tokens

    def _string_token(self, source: str, words: list[_Word], i: int) -> tuple[Token, int]:
        j = i
        while j < len(words):
            text = words[j].text
            # a lone opening quote never closes itself
            if text.endswith('"') and not (i == j and text == '"'):
                lexeme = source[words[i].char_start:words[j].char_end]
                span = (words[i].byte_start, words[j].byte_end)
                return Token(TokenKind.STRING, lexeme, span, norm=lexeme[1:-1]), j + 1
            j += 1
        # unterminated: everything to the end is one unknown token
        lexeme = source[words[i].char_start:words[-1].char_end]
        span = (words[i].byte_start, words[-1].byte_end)
        return Token(TokenKind.UNKNOWN, lexeme, span, norm=lexeme.casefold()), len(words)

    def _match_at(self, source: str, words: list[_Word], i: int) -> tuple[Token, int]:
        limit = min(self._max_len, len(words) - i)
        for size in range(limit, 0, -1):
            window = tuple(w.text for w in words[i:i + size])
            folded = tuple(w.casefold() for w in window)

            kind = self._kw.get(folded)
            if kind is not None:
                return self._token(kind, source, words, i, size, " ".join(folded)), i + size
            term = self._terms.get(folded)
            if term is not None:
                return self._token(
                    TokenKind.TERM_REF, source, words, i, size, " ".join(folded), term), i + size
            name = self._names.get(window)
            if name is not None:
                return self._token(
                    TokenKind.NAME_REF, source, words, i, size, " ".join(window), name), i + size
            if size == 1:
                if folded[0] in self._verb_words:
                    return self._token(TokenKind.VERB_WORD, source, words, i, 1, folded[0]), i + 1
                if _NUMBER.match(window[0]):
                    return self._token(TokenKind.NUMBER, source, words, i, 1, window[0]), i + 1
        return self._token(TokenKind.UNKNOWN, source, words, i, 1, words[i].text.casefold()), i + 1

    @staticmethod
    def _token(kind, source, words, i, size, norm, resolved=None) -> Token:
        first, last = words[i], words[i + size - 1]
        return Token(
            kind, source[first.char_start:last.char_end],
            (first.byte_start, last.byte_end), norm, resolved)


def tokenize(source: str, v: Vocabulary, k: KeywordTable = ENGLISH) -> list[Token]:
    """Tokenize rule text against a vocabulary; never fails."""
    return Lexer(v, k).tokenize(source)


_HIGHLIGHT_OF = {
    TokenKind.TERM_REF: HighlightClass.TERM,
    TokenKind.NAME_REF: HighlightClass.TERM,
    TokenKind.VERB_WORD: HighlightClass.VERB,
    TokenKind.KEYWORD: HighlightClass.PARTICLE,
    TokenKind.QUANTIFIER: HighlightClass.PARTICLE,
    TokenKind.NUMBER: HighlightClass.LITERAL,
    TokenKind.STRING: HighlightClass.LITERAL,
    TokenKind.UNKNOWN: HighlightClass.ERROR,
}


def classify_for_highlighting(tokens: list[Token]) -> list[tuple[Span, HighlightClass]]:
    """Map tokens onto the editor's typography classes, span-sorted."""
    return [(t.span, _HIGHLIGHT_OF[t.kind]) for t in sorted(tokens, key=lambda t: t.span)]
