from hypothesis import given, settings, strategies as st

from rulecnl.lexer import (
    HighlightClass, Lexer, TokenKind, classify_for_highlighting, tokenize,
)
from rulecnl.vocab import DomainTerm, VerbSignature, Vocabulary, parse_vocabulary

from helpers import enumeration_oracle, greedy_oracle, token_kinds, word_sources


def kinds(tokens):
    return [(t.kind, t.norm) for t in tokens]


class TestTokenize:
    def test_simple_statement(self, paper_lexer):
        tokens = paper_lexer.tokenize("each customer places at least one order")
        assert kinds(tokens) == [
            (TokenKind.QUANTIFIER, "each"),
            (TokenKind.TERM_REF, "customer"),
            (TokenKind.VERB_WORD, "places"),
            (TokenKind.QUANTIFIER, "at least one"),
            (TokenKind.TERM_REF, "order"),
        ]

    def test_empty_source(self, paper_lexer):
        assert paper_lexer.tokenize("") == []

    def test_longest_match_beats_shorter_term(self):
        v = parse_vocabulary(
            "Term: balance\nTerm: outstanding balance\nVerb: balance grows").vocabulary
        tokens = tokenize("outstanding balance", v)
        assert kinds(tokens) == [(TokenKind.TERM_REF, "outstanding balance")]
        # oracle agreement on the same source
        assert token_kinds(tokens) == enumeration_oracle("outstanding balance", v)

    def test_quoted_instance(self, paper_lexer):
        tokens = paper_lexer.tokenize('customer "John"')
        assert kinds(tokens) == [
            (TokenKind.TERM_REF, "customer"), (TokenKind.STRING, "John")]
        assert tokens[1].lexeme == '"John"'

    def test_multi_word_string(self, paper_lexer):
        tokens = paper_lexer.tokenize('the customer "Jane Q Public" adult')
        string = [t for t in tokens if t.kind is TokenKind.STRING]
        assert string[0].norm == "Jane Q Public"

    def test_unterminated_string_is_unknown(self, paper_lexer):
        tokens = paper_lexer.tokenize('customer "John places')
        assert tokens[-1].kind is TokenKind.UNKNOWN

    def test_modality_is_one_keyword_token(self, paper_lexer):
        tokens = paper_lexer.tokenize("It is obligatory that")
        assert kinds(tokens) == [(TokenKind.KEYWORD, "it is obligatory that")]

    def test_unknown_words_never_fail(self, paper_lexer):
        tokens = paper_lexer.tokenize("zorp customer blat")
        assert [t.kind for t in tokens] == [
            TokenKind.UNKNOWN, TokenKind.TERM_REF, TokenKind.UNKNOWN]
        assert all(t.resolved is None for t in tokens if t.kind is TokenKind.UNKNOWN)

    def test_keyword_over_term_priority(self):
        # grammar keywords are reserved even if a term shadows one
        v = Vocabulary(terms=(DomainTerm("the"),))
        tokens = tokenize("the", v)
        assert tokens[0].kind is TokenKind.KEYWORD

    def test_term_refs_resolved(self, paper_vocab, paper_lexer):
        tokens = paper_lexer.tokenize("outstanding balance")
        assert tokens[0].resolved == paper_vocab.lookup_term("outstanding balance")

    def test_numbers(self, paper_lexer):
        tokens = paper_lexer.tokenize("0 12 3.25")
        assert [t.kind for t in tokens] == [TokenKind.NUMBER] * 3
        assert [t.norm for t in tokens] == ["0", "12", "3.25"]

    def test_negative_number_is_unknown(self, paper_lexer):
        assert paper_lexer.tokenize("-3")[0].kind is TokenKind.UNKNOWN

    def test_byte_spans_with_multibyte_text(self):
        v = parse_vocabulary("Term: café\nVerb: café opens").vocabulary
        tokens = tokenize("café opens", v)
        data = "café opens".encode("utf-8")
        assert tokens[0].span == (0, len("café".encode("utf-8")))
        start, end = tokens[1].span
        assert data[start:end].decode("utf-8") == "opens"


class TestLossless:
    @settings(max_examples=60, deadline=None)
    @given(st.text(
        alphabet=st.sampled_from("abc é \" 0127."), min_size=0, max_size=40))
    def test_tokens_plus_whitespace_reproduce_source(self, paper_lexer, source):
        tokens = paper_lexer.tokenize(source)
        data = source.encode("utf-8")
        pieces = []
        pos = 0
        for t in tokens:
            start, end = t.span
            assert start >= pos, "spans must be non-overlapping and increasing"
            gap = data[pos:start]
            assert not gap.strip(), "only whitespace may separate tokens"
            pieces.append(gap)
            assert t.lexeme.encode("utf-8") == data[start:end]
            pieces.append(data[start:end])
            pos = end
        assert not data[pos:].strip()
        pieces.append(data[pos:])
        assert b"".join(pieces) == data

    def test_exact_reconstruction(self, paper_lexer):
        source = "each  customer   places\tan order"
        tokens = paper_lexer.tokenize(source)
        data = source.encode("utf-8")
        pieces = []
        pos = 0
        for t in tokens:
            pieces.append(data[pos:t.span[0]])
            pieces.append(t.lexeme.encode("utf-8"))
            pos = t.span[1]
        pieces.append(data[pos:])
        assert b"".join(pieces) == data


class TestOracleAgreement:
    def adversarial_vocab(self):
        return Vocabulary(
            terms=(DomainTerm("x"), DomainTerm("y"), DomainTerm("x y"),
                   DomainTerm("y x x")),
            verbs=(VerbSignature("x", "z y", "x"), VerbSignature("y", "z")),
        )

    def test_greedy_oracle_exhaustive_small(self):
        v = self.adversarial_vocab()
        lexer = Lexer(v)
        for source in word_sources(["x", "y", "z"], 6):
            assert token_kinds(lexer.tokenize(source)) == greedy_oracle(source, v), source

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_enumeration_oracle_random_universes(self, data):
        words = ["a", "b", "c"]
        labels = data.draw(st.lists(
            st.sampled_from(["a", "b", "a b", "b a", "a b a", "c"]),
            min_size=1, max_size=4, unique=True))
        v = Vocabulary(
            terms=tuple(DomainTerm(lbl) for lbl in labels),
            verbs=(VerbSignature(labels[0], "c c"),) if "c" not in labels else ())
        source = " ".join(data.draw(st.lists(st.sampled_from(words + ["each"]),
                                             min_size=0, max_size=7)))
        assert token_kinds(tokenize(source, v)) == enumeration_oracle(source, v)

    def test_determinism(self, paper_lexer):
        source = "each customer places at least one order"
        assert paper_lexer.tokenize(source) == paper_lexer.tokenize(source)


class TestHighlighting:
    def test_paper_formatting_convention(self, paper_lexer):
        source = "each customer places at least one order"
        spans = classify_for_highlighting(paper_lexer.tokenize(source))
        data = source.encode("utf-8")
        rendered = [(data[s:e].decode(), cls) for (s, e), cls in spans]
        assert rendered == [
            ("each", HighlightClass.PARTICLE),
            ("customer", HighlightClass.TERM),
            ("places", HighlightClass.VERB),
            ("at least one", HighlightClass.PARTICLE),
            ("order", HighlightClass.TERM),
        ]

    def test_empty(self):
        assert classify_for_highlighting([]) == []

    def test_unknown_maps_to_error(self, paper_lexer):
        spans = classify_for_highlighting(paper_lexer.tokenize("customer zorp"))
        assert [cls for _, cls in spans].count(HighlightClass.ERROR) == 1

    def test_literals(self, paper_lexer):
        spans = classify_for_highlighting(paper_lexer.tokenize('"John" 3'))
        assert [cls for _, cls in spans] == [HighlightClass.LITERAL, HighlightClass.LITERAL]
