"""Rule parse trees: a modality wrapping a statement tree of clauses.

Every node keeps the byte span of the source text it covers and the exact
words it was written with, so a rule can be re-rendered and diagnostics can
point at precise locations. Nodes are immutable; two structurally identical
occurrences in one rule still differ by span, so nodes can key dicts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

Span = tuple[int, int]


class Modality(enum.Enum):
    OBLIGATION = "obligation"
    PROHIBITION = "prohibition"
    NECESSITY = "necessity"
    IMPOSSIBILITY = "impossibility"
    PERMISSION = "permission"
    POSSIBILITY = "possibility"


class DeterminerKind(enum.Enum):
    UNIVERSAL = "universal"          # each
    AT_LEAST_ONE = "at-least-one"    # a, an, some, at least one
    AT_LEAST_N = "at-least-n"
    AT_MOST_N = "at-most-n"
    EXACTLY_N = "exactly-n"
    DEFINITE = "definite"            # the
    BARE = "bare"                    # no determiner written


@dataclass(frozen=True)
class Determiner:
    kind: DeterminerKind
    n: int | None = None        # for the counted kinds, n >= 1
    text: str = ""              # words as written, "" when BARE

    def render(self) -> str:
        if self.kind is DeterminerKind.BARE:
            return ""
        if self.n is not None and self.kind in (
            DeterminerKind.AT_LEAST_N, DeterminerKind.AT_MOST_N, DeterminerKind.EXACTLY_N
        ):
            return f"{self.text} {self.n}"
        return self.text


BARE = Determiner(DeterminerKind.BARE)


@dataclass(frozen=True)
class NounPhrase:
    determiner: Determiner
    term_words: str                  # term as written (single-spaced); "" for a name phrase
    term_label: str | None = None    # canonical vocabulary label resolved by the lexer
    instance: str | None = None      # quoted instance string, without quotes
    qualifier: "Qualifier | None" = None
    name_label: str | None = None    # set instead of term_words for a DomainName phrase
    span: Span = (0, 0)

    def render(self) -> str:
        if self.name_label is not None:
            return self.name_label
        parts = []
        det = self.determiner.render()
        if det:
            parts.append(det)
        parts.append(self.term_words)
        if self.instance is not None:
            parts.append(f'"{self.instance}"')
        if self.qualifier is not None:
            parts.append(self.qualifier.render())
        return " ".join(parts)


@dataclass(frozen=True)
class StringObject:
    value: str
    span: Span

    def render(self) -> str:
        return f'"{self.value}"'


@dataclass(frozen=True)
class NumberObject:
    lexeme: str
    span: Span

    def render(self) -> str:
        return self.lexeme


PredicateObject = Union[NounPhrase, StringObject, NumberObject]


@dataclass(frozen=True)
class Predicate:
    verb_words: tuple[str, ...]
    object: PredicateObject | None = None
    span: Span = (0, 0)

    def render(self) -> str:
        text = " ".join(self.verb_words)
        if self.object is not None:
            text += " " + self.object.render()
        return text


@dataclass(frozen=True)
class Qualifier:
    relative_pronoun: str                    # who | that | which
    predicates: tuple[Predicate, ...]
    ops: tuple[str, ...] = ()                # "and"/"or" between consecutive predicates

    def render(self) -> str:
        return f"{self.relative_pronoun} {_render_predicates(self.predicates, self.ops)}"


@dataclass(frozen=True)
class Simple:
    subject: NounPhrase
    predicates: tuple[Predicate, ...]
    ops: tuple[str, ...] = ()
    span: Span = (0, 0)

    def render(self) -> str:
        return f"{self.subject.render()} {_render_predicates(self.predicates, self.ops)}"


@dataclass(frozen=True)
class Junction:
    op: str                                  # "and" | "or"
    operands: tuple["Statement", ...]        # always >= 2
    span: Span = (0, 0)

    def render(self) -> str:
        return f" {self.op} ".join(s.render() for s in self.operands)


@dataclass(frozen=True)
class Conditional:
    condition: "Statement"
    consequence: "Statement"
    span: Span = (0, 0)

    def render(self) -> str:
        return f"{self.consequence.render()} if {self.condition.render()}"


Statement = Union[Simple, Junction, Conditional]


@dataclass(frozen=True)
class RuleAst:
    modality: Modality
    statement: Statement
    modality_text: str = ""                  # modality phrase as written
    source_span: Span = (0, 0)

    def render(self) -> str:
        return f"{self.modality_text} {self.statement.render()}"


def _render_predicates(predicates, ops) -> str:
    out = [predicates[0].render()]
    for op, pred in zip(ops, predicates[1:]):
        out.append(op)
        out.append(pred.render())
    return " ".join(out)


def render_rule(ast: RuleAst) -> str:
    """Reproduce the rule text (modulo whitespace) from its parse tree."""
    return ast.render()


def walk_noun_phrases(node) -> list[NounPhrase]:
    """All noun phrases under ``node`` in no particular order (sort by span)."""
    found: list[NounPhrase] = []
    _collect_nps(node, found)
    return found


def _collect_nps(node, out: list[NounPhrase]) -> None:
    if isinstance(node, RuleAst):
        _collect_nps(node.statement, out)
    elif isinstance(node, Conditional):
        _collect_nps(node.condition, out)
        _collect_nps(node.consequence, out)
    elif isinstance(node, Junction):
        for operand in node.operands:
            _collect_nps(operand, out)
    elif isinstance(node, Simple):
        _collect_nps(node.subject, out)
        for pred in node.predicates:
            _collect_nps(pred, out)
    elif isinstance(node, NounPhrase):
        out.append(node)
        if node.qualifier is not None:
            for pred in node.qualifier.predicates:
                _collect_nps(pred, out)
    elif isinstance(node, Predicate):
        if node.object is not None and isinstance(node.object, NounPhrase):
            _collect_nps(node.object, out)


def walk_predicates(node) -> list[Predicate]:
    """All predicates under ``node``, qualifier predicates included."""
    found: list[Predicate] = []
    _collect_preds(node, found)
    return found


def _collect_preds(node, out: list[Predicate]) -> None:
    if isinstance(node, RuleAst):
        _collect_preds(node.statement, out)
    elif isinstance(node, Conditional):
        _collect_preds(node.condition, out)
        _collect_preds(node.consequence, out)
    elif isinstance(node, Junction):
        for operand in node.operands:
            _collect_preds(operand, out)
    elif isinstance(node, Simple):
        _collect_preds(node.subject, out)
        for pred in node.predicates:
            _collect_preds(pred, out)
    elif isinstance(node, NounPhrase):
        if node.qualifier is not None:
            for pred in node.qualifier.predicates:
                _collect_preds(pred, out)
    elif isinstance(node, Predicate):
        out.append(node)
        if isinstance(node.object, NounPhrase):
            _collect_preds(node.object, out)
