"""Resolve a parsed rule against the vocabulary.

Every clause must bind to exactly one verb signature; noun phrases get
logical variables (numbered v1, v2, ... in source order), individual
references (quoted instances, domain names) or quantity literals.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Union

from . import diagnostics as diag
from .ast import (
    Conditional, DeterminerKind, Junction, NounPhrase, NumberObject, Predicate,
    RuleAst, Simple, StringObject, walk_noun_phrases,
)
from .diagnostics import Diagnostic
from .vocab import QUANTITY, DomainTerm, VerbForm, VerbSignature, Vocabulary


@dataclass(frozen=True)
class Variable:
    id: str
    ranges_over: str        # term label


@dataclass(frozen=True)
class IndividualRef:
    label: str
    concept: str | None = None   # term label the individual instantiates


@dataclass(frozen=True)
class LiteralRef:
    lexeme: str
    concept: str = QUANTITY.label


Referent = Union[Variable, IndividualRef, LiteralRef]


@dataclass
class BoundRule:
    ast: RuleAst
    bindings: Mapping[Predicate, VerbSignature]
    variables: tuple[Variable, ...]
    var_of: Mapping[NounPhrase, Referent]
    reused: frozenset[NounPhrase]        # definite phrases that re-use an earlier referent
    warnings: list[Diagnostic]

    def signature_of(self, predicate: Predicate) -> VerbSignature:
        return self.bindings[predicate]


def candidate_verbs(v: Vocabulary, subject: DomainTerm | None,
                    verb_words: list[str]) -> list[VerbSignature]:
    """Signatures whose subject and verb text match, in deterministic order.

    Matching is case-insensitive on the joined words; a leading copula "is"
    may be dropped when the remainder matches a declared unary verb (rules
    write "order is shipped" for the declaration "order shipped"). Built-in
    comparisons match any subject (every compared term is quantity-valued),
    and a None subject (an untyped name) matches on verb text alone.
    """
    joined = " ".join(w.casefold() for w in verb_words)
    bare = joined.split(" ", 1)[1] if joined.startswith("is ") else None
    wanted = None if subject is None else subject.label.casefold()

    found = []
    for sig in v.all_signatures():
        text = sig.verb_text.casefold()
        if not (text == joined or (bare is not None and sig.arity == 1 and text == bare)):
            continue
        if wanted is None or sig.form is VerbForm.BUILTIN or sig.subject_term.casefold() == wanted:
            found.append(sig)
    found.sort(key=lambda s: (s.verb_text.casefold(), s.key))
    return found


def bind(ast: RuleAst, v: Vocabulary) -> "BoundRule | list[Diagnostic]":
    """Bind every predicate and noun phrase of ``ast`` against ``v``."""
    binder = _Binder(v)
    ast = binder.merge_long_verbs(ast)
    binder.assign_referents(ast)
    binder.bind_predicates(ast)
    if binder.errors:
        return binder.errors
    return BoundRule(
        ast, binder.bindings, tuple(binder.variables), binder.var_of,
        frozenset(binder.reused), binder.warnings)


class _Binder:
    def __init__(self, v: Vocabulary):
        self.v = v
        self.errors: list[Diagnostic] = []
        self.warnings: list[Diagnostic] = []
        self.variables: list[Variable] = []
        self.var_of: dict[NounPhrase, Referent] = {}
        self.reused: set[NounPhrase] = set()
        self.bindings: dict[Predicate, VerbSignature] = {}

    # ------------------------------------------------------ verb reassembly

    def merge_long_verbs(self, ast: RuleAst) -> RuleAst:
        """Re-join coordinator-split predicates when the longer verb exists.

        The lexer reserves "and"/"or" as keywords, so a declared verb text
        containing one (the builtin "is greater than or equal to") parses as
        two predicates. The longest declared verb wins, per the grammar's
        ambiguity rule.
        """
        return replace(ast, statement=self._merge_statement(ast.statement))

    def _merge_statement(self, stmt):
        if isinstance(stmt, Conditional):
            return replace(
                stmt, condition=self._merge_statement(stmt.condition),
                consequence=self._merge_statement(stmt.consequence))
        if isinstance(stmt, Junction):
            return replace(
                stmt, operands=tuple(self._merge_statement(s) for s in stmt.operands))
        subject = self._merge_np(stmt.subject)
        predicates, ops = self._merge_list(subject, stmt.predicates, stmt.ops)
        return replace(stmt, subject=subject, predicates=predicates, ops=ops)

    def _merge_np(self, np: NounPhrase) -> NounPhrase:
        if np.qualifier is None:
            return np
        predicates, ops = self._merge_list(np, np.qualifier.predicates, np.qualifier.ops)
        return replace(np, qualifier=replace(np.qualifier, predicates=predicates, ops=ops))

    def _merge_list(self, subject_np: NounPhrase, predicates, ops):
        preds = [
            replace(p, object=self._merge_np(p.object))
            if isinstance(p.object, NounPhrase) else p
            for p in predicates
        ]
        out_preds: list[Predicate] = []
        out_ops: list[str] = []
        i = 0
        while i < len(preds):
            end = self._longest_merge(subject_np, preds, ops, i)
            if end > i:
                words: list[str] = []
                for k in range(i, end):
                    words.extend(preds[k].verb_words)
                    words.append(ops[k])
                words.extend(preds[end].verb_words)
                pred = Predicate(tuple(words), preds[end].object,
                                 (preds[i].span[0], preds[end].span[1]))
            else:
                pred, end = preds[i], i
            if out_preds:
                out_ops.append(ops[i - 1])
            out_preds.append(pred)
            i = end + 1
        return tuple(out_preds), tuple(out_ops)

    def _longest_merge(self, subject_np: NounPhrase, preds, ops, i: int) -> int:
        subject_term = self._subject_term(subject_np)
        for end in range(len(preds) - 1, i, -1):
            if any(p.object is not None for p in preds[i:end]):
                continue
            words: list[str] = []
            for k in range(i, end):
                words.extend(preds[k].verb_words)
                words.append(ops[k])
            words.extend(preds[end].verb_words)
            matches = [
                sig for sig in candidate_verbs(self.v, subject_term, words)
                if self._object_matches(sig, preds[end].object)
            ]
            if matches:
                return end
        return i

    # ------------------------------------------------------------ referents

    def assign_referents(self, ast: RuleAst) -> None:
        """Walk noun phrases left-to-right and give each one a referent."""
        phrases = sorted(walk_noun_phrases(ast), key=lambda np: np.span)
        mentioned: list[tuple[str, Referent]] = []  # (term label folded, referent)

        for np in phrases:
            referent = self._referent_for(np, mentioned)
            self.var_of[np] = referent
            if np.term_label is not None and not isinstance(referent, LiteralRef):
                mentioned.append((np.term_label.casefold(), referent))

    def _referent_for(self, np: NounPhrase, mentioned) -> Referent:
        if np.name_label is not None:
            name = self.v.lookup_name(np.name_label)
            concept = name.of_term if name is not None else None
            return IndividualRef(np.name_label, concept)
        if np.instance is not None:
            return IndividualRef(np.instance, np.term_label)

        if np.determiner.kind is DeterminerKind.DEFINITE and np.qualifier is None:
            wanted = (np.term_label or "").casefold()
            for label, referent in reversed(mentioned):
                if label == wanted:
                    self.reused.add(np)
                    return referent
            self.warnings.append(diag.warning(
                diag.UNRESOLVED_DEFINITE,
                f'"the {np.term_words}" does not refer to any earlier "{np.term_words}"; '
                "reading it as some " + np.term_words,
                np.span))
        return self._fresh_variable(np.term_label or "")

    def _fresh_variable(self, term_label: str) -> Variable:
        var = Variable(f"v{len(self.variables) + 1}", term_label)
        self.variables.append(var)
        return var

    # ----------------------------------------------------------- predicates

    def bind_predicates(self, node) -> None:
        if isinstance(node, RuleAst):
            self.bind_predicates(node.statement)
        elif isinstance(node, Conditional):
            self.bind_predicates(node.condition)
            self.bind_predicates(node.consequence)
        elif isinstance(node, Junction):
            for operand in node.operands:
                self.bind_predicates(operand)
        elif isinstance(node, Simple):
            self._descend_qualifier(node.subject)
            self._bind_clauses(node.subject, node.predicates)

    def _bind_clauses(self, subject_np: NounPhrase, predicates) -> None:
        for pred in predicates:
            self._bind_predicate(subject_np, pred)
            if isinstance(pred.object, NounPhrase):
                self._descend_qualifier(pred.object)

    def _descend_qualifier(self, np: NounPhrase) -> None:
        if np.qualifier is not None:
            self._bind_clauses(np, np.qualifier.predicates)

    def _subject_term(self, subject_np: NounPhrase) -> DomainTerm | None:
        if subject_np.term_label is not None:
            return self.v.lookup_term(subject_np.term_label)
        if subject_np.name_label is not None:
            name = self.v.lookup_name(subject_np.name_label)
            if name is not None and name.of_term is not None:
                return self.v.lookup_term(name.of_term)
        return None

    def _bind_predicate(self, subject_np: NounPhrase, pred: Predicate) -> None:
        subject_term = self._subject_term(subject_np)
        candidates = candidate_verbs(self.v, subject_term, list(pred.verb_words))
        matches = [sig for sig in candidates if self._object_matches(sig, pred.object)]

        # exact subject declarations shadow the quantity-valued builtin coercion
        exact = [s for s in matches if s.form is not VerbForm.BUILTIN
                 or subject_term is QUANTITY]
        if exact and len(exact) < len(matches):
            matches = exact

        verb_text = " ".join(pred.verb_words)
        if len(matches) == 1:
            self.bindings[pred] = matches[0]
            return
        if len(matches) > 1:
            listed = "; ".join(s.render() for s in matches)
            self.errors.append(diag.error(
                diag.AMBIGUOUS_VERB,
                f'"{verb_text}" matches more than one verb: {listed}', pred.span))
            return
        if candidates:
            listed = "; ".join(s.render() for s in candidates)
            self.errors.append(diag.error(
                diag.TYPE_MISMATCH,
                f'"{verb_text}" exists with different terms: {listed}', pred.span))
            return
        subject_text = subject_np.term_words or subject_np.name_label or "?"
        hints = sorted(
            {s.render() for s in self.v.verbs
             if s.verb_text.casefold() == verb_text.casefold()})
        message = f'no verb "{verb_text}" is declared for subject "{subject_text}"'
        if hints:
            message += "; declared elsewhere as: " + "; ".join(hints)
        self.errors.append(diag.error(diag.NO_SUCH_VERB, message, pred.span))

    def _object_matches(self, sig: VerbSignature, obj) -> bool:
        if obj is None:
            return sig.arity == 1
        if sig.arity != 2:
            return False
        if sig.form is VerbForm.BUILTIN:
            return True  # comparisons accept any quantity-valued operand
        if isinstance(obj, NumberObject):
            return sig.object_term.casefold() == QUANTITY.label
        if isinstance(obj, StringObject):
            return True  # untyped individual, typed by the signature
        if isinstance(obj, NounPhrase):
            if obj.term_label is not None:
                return sig.object_term.casefold() == obj.term_label.casefold()
            if obj.name_label is not None:
                name = self.v.lookup_name(obj.name_label)
                if name is not None and name.of_term is not None:
                    return sig.object_term.casefold() == name.of_term.casefold()
                return True  # untyped name
        return False
