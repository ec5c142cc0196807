import random

import pytest
from hypothesis import given, settings, strategies as st

import rulecnl.diagnostics as diag
from rulecnl.vocab import (
    BUILTIN_COMPARISONS, QUANTITY, DomainTerm, VerbForm, VerbSignature,
    Vocabulary, link_passive_pairs, parse_vocabulary, serialize_vocabulary,
)

from helpers import random_vocabulary


def ok(source):
    result = parse_vocabulary(source)
    assert result.ok, result.diagnostics
    return result.vocabulary


def errors(source):
    result = parse_vocabulary(source)
    assert not result.ok
    return result.diagnostics


class TestParseVocabulary:
    def test_binary_verb(self):
        v = ok("Term: customer\nTerm: order\nVerb: customer places order")
        assert len(v.terms) == 2
        assert len(v.verbs) == 1
        sig = v.verbs[0]
        assert (sig.subject_term, sig.verb_text, sig.object_term) == ("customer", "places", "order")
        assert sig.form is VerbForm.ACTIVE

    def test_unary_verb(self):
        v = ok("Term: order\nVerb: order shipped")
        assert len(v.terms) == 1
        assert v.verbs[0].object_term is None
        assert v.verbs[0].arity == 1

    def test_empty_source_yields_builtins_only(self):
        v = ok("")
        assert v.terms == () and v.names == () and v.verbs == ()
        assert len(v.builtins) == 6

    def test_article_label_rejected(self):
        diags = errors("Term: the customer")
        assert diags[0].code == diag.TERM_ARTICLE
        assert "article" in diags[0].message

    def test_duplicate_term(self):
        diags = errors("Term: customer\nTerm: Customer")
        assert diags[0].code == diag.DUP_TERM

    def test_duplicate_name_case_sensitive(self):
        v = ok("Name: France\nName: FRANCE")
        assert len(v.names) == 2
        assert errors("Name: France\nName: France")[0].code == diag.DUP_NAME

    def test_undeclared_subject(self):
        diags = errors("Term: order\nVerb: customer places order")
        assert diags[0].code == diag.UNDECLARED_TERM
        assert diags[0].source == "vocab"

    def test_duplicate_signature(self):
        source = "Term: a1\nTerm: b1\nVerb: a1 places b1\nVerb: a1 places b1"
        # labels may not start with articles, keep them plain words
        source = source.replace("a1", "crate").replace("b1", "pallet")
        assert errors(source)[0].code == diag.DUP_VERB

    def test_malformed_line(self):
        diags = errors("Frob: x")
        assert diags[0].code == diag.VOCAB_SYNTAX

    def test_comments_and_blanks_ignored(self):
        v = ok("# heading\n\nTerm: customer  # trailing\n")
        assert [t.label for t in v.terms] == ["customer"]

    def test_greedy_term_ends(self):
        v = ok(
            "Term: gold customer\nTerm: customer\nTerm: special order\nTerm: order\n"
            "Verb: gold customer places special order")
        sig = v.verbs[0]
        assert sig.subject_term == "gold customer"
        assert sig.verb_text == "places"
        assert sig.object_term == "special order"

    def test_name_typing(self):
        v = ok("Term: country\nName: France : country\nName: Euro")
        assert v.names[0].of_term == "country"
        assert v.names[1].of_term is None

    def test_passive_requires_object(self):
        diags = errors("Term: order\nVerb(passive): order shipped")
        assert diags[0].code == diag.VOCAB_SYNTAX

    def test_builtins_fixed_table(self):
        v = ok("")
        texts = sorted(s.verb_text for s in v.builtins)
        assert texts == [
            "is equal to", "is greater than", "is greater than or equal to",
            "is less than", "is less than or equal to", "is not equal to",
        ]
        assert all(s.subject_term == "quantity" and s.object_term == "quantity"
                   and s.form is VerbForm.BUILTIN for s in v.builtins)


class TestPassivePairs:
    SOURCE = (
        "Term: customer\nTerm: order\n"
        "Verb: customer places order\n"
        "Verb(passive): order is placed by customer\n")

    def test_cross_reference(self):
        v = ok(self.SOURCE)
        active = next(s for s in v.verbs if s.form is VerbForm.ACTIVE)
        passive = next(s for s in v.verbs if s.form is VerbForm.PASSIVE)
        assert passive.paired_form == active.key
        assert active.paired_form == passive.key

    def test_active_only_is_legal(self):
        result = parse_vocabulary("Term: customer\nTerm: order\nVerb: customer places order")
        assert result.ok and result.diagnostics == []

    def test_unpaired_passive_warns(self):
        result = parse_vocabulary(
            "Term: customer\nTerm: order\nVerb(passive): order is placed by customer")
        assert result.ok
        assert [d.code for d in result.diagnostics] == [diag.UNPAIRED_PASSIVE]
        assert result.diagnostics[0].severity is diag.Severity.WARNING

    def test_pairing_matches_brute_force(self):
        # oracle: enumerate all (passive, active) pairs and keep role-swapped ones
        rng = random.Random(7)
        for _ in range(25):
            v = random_vocabulary(rng)
            linked, warnings = link_passive_pairs(v)
            for sig in linked.verbs:
                if sig.form is not VerbForm.PASSIVE:
                    continue
                swapped = [
                    a for a in v.verbs
                    if a.form is VerbForm.ACTIVE
                    and (a.subject_term, a.object_term) == (sig.object_term, sig.subject_term)
                ]
                if swapped:
                    assert sig.paired_form is not None
                    assert sig.paired_form in {a.key for a in swapped}
                else:
                    assert sig.paired_form is None
                    assert any(d.code == diag.UNPAIRED_PASSIVE for d in warnings)

    def test_pair_invariant_roles_swapped(self):
        v = ok(self.SOURCE)
        by_key = {s.key: s for s in v.verbs}
        for sig in v.verbs:
            if sig.form is VerbForm.PASSIVE and sig.paired_form:
                active = by_key[sig.paired_form]
                assert active.subject_term == sig.object_term
                assert active.object_term == sig.subject_term


class TestLookups:
    def test_lookup_multi_word(self, paper_vocab):
        assert paper_vocab.lookup_term("gold customer") is None
        term = paper_vocab.lookup_term("outstanding balance")
        assert term is not None and term.label == "outstanding balance"

    def test_lookup_case_insensitive(self, paper_vocab):
        assert paper_vocab.lookup_term("Customer").label == "customer"

    def test_lookup_no_inflection(self, paper_vocab):
        assert paper_vocab.lookup_term("customers") is None

    def test_lookup_is_pure(self, paper_vocab):
        assert paper_vocab.lookup_term("order") == paper_vocab.lookup_term("order")

    def test_verbs_for_subject_sorted(self, paper_vocab):
        customer = paper_vocab.lookup_term("customer")
        rendered = [s.render() for s in paper_vocab.verbs_for_subject(customer)]
        assert rendered == ["customer adult", "customer holds account", "customer places order"]

    def test_verbs_for_unreferenced_term(self):
        v = ok("Term: customer\nTerm: order\nVerb: customer places order")
        assert v.verbs_for_subject(v.lookup_term("order")) == []

    def test_verbs_for_quantity_are_builtins(self):
        v = ok("")
        found = v.verbs_for_subject(QUANTITY)
        # oracle: the fixed table, label-sorted
        assert found == sorted(BUILTIN_COMPARISONS, key=lambda s: s.verb_text)
        assert len(found) == 6


class TestRoundTrip:
    def test_paper_vocab_round_trips(self, paper_vocab):
        again = parse_vocabulary(serialize_vocabulary(paper_vocab)).vocabulary
        assert set(again.terms) == set(paper_vocab.terms)
        assert set(again.names) == set(paper_vocab.names)
        assert set(again.verbs) == set(paper_vocab.verbs)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_vocab_round_trips(self, seed):
        v = random_vocabulary(random.Random(seed))
        again = parse_vocabulary(serialize_vocabulary(v))
        assert again.ok
        assert set(again.vocabulary.terms) == set(v.terms)
        assert set(again.vocabulary.names) == set(v.names)
        assert set(again.vocabulary.verbs) == set(v.verbs)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_duplicate_signatures_always_rejected(self, seed):
        v = random_vocabulary(random.Random(seed))
        if not v.verbs:
            return
        sig = random.Random(seed).choice(v.verbs)
        dup = VerbSignature(sig.subject_term, sig.verb_text, sig.object_term, sig.form)
        source = serialize_vocabulary(Vocabulary(v.terms, v.names, v.verbs + (dup,)))
        result = parse_vocabulary(source)
        assert any(d.code == diag.DUP_VERB for d in result.diagnostics)


def test_vocabulary_is_immutable(paper_vocab):
    with pytest.raises(Exception):
        paper_vocab.terms = ()
    with pytest.raises(Exception):
        DomainTerm("x").label = "y"
