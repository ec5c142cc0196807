"""Semantic formulations: the language-independent logic tree of a rule.

A bound rule maps onto a modal formulation wrapping quantifications,
atomic formulations, logical operations and projections. The resulting
formula is always closed: a variable referenced from several branches of a
logical operation has its quantification hoisted around that operation.

``to_xml`` renders a formulation deterministically (2-space indent, fixed
attribute order); ``parse_xml`` reads it back; ``validate_sf`` is an
independent well-formedness check sharing no code with ``formulate``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union
from xml.etree import ElementTree
from xml.sax.saxutils import quoteattr

from .ast import (
    Conditional, DeterminerKind, Junction, Modality, NounPhrase, NumberObject,
    Predicate, Qualifier, Simple, StringObject,
)
from .binder import BoundRule, IndividualRef, Variable
from .vocab import VerbForm, VerbSignature


class LogicalOp(enum.Enum):
    CONJUNCTION = "conjunction"
    DISJUNCTION = "disjunction"
    IMPLICATION = "implication"


@dataclass(frozen=True)
class VariableRef:
    ref: str
    definite: bool = False


@dataclass(frozen=True)
class IndividualConceptRef:
    name: str
    concept: str | None = None


@dataclass(frozen=True)
class QuantityLiteral:
    value: str


Role = Union[VariableRef, IndividualConceptRef, QuantityLiteral]


@dataclass(frozen=True)
class AtomicFormulation:
    fact_type: VerbSignature
    roles: tuple[Role, ...]


@dataclass(frozen=True)
class LogicalOperation:
    op: LogicalOp
    operands: tuple["SemanticFormulation", ...]


@dataclass(frozen=True)
class Projection:
    var: Variable
    constraint: "SemanticFormulation"


@dataclass(frozen=True)
class UniversalQuantification:
    var: Variable
    body: "SemanticFormulation"
    restriction: "SemanticFormulation | None" = None


@dataclass(frozen=True)
class ExistentialQuantification:
    var: Variable
    body: "SemanticFormulation"
    restriction: "SemanticFormulation | None" = None
    definite: bool = False


@dataclass(frozen=True)
class AtLeastNQuantification:
    n: int
    var: Variable
    body: "SemanticFormulation"
    restriction: "SemanticFormulation | None" = None


@dataclass(frozen=True)
class AtMostNQuantification:
    n: int
    var: Variable
    body: "SemanticFormulation"
    restriction: "SemanticFormulation | None" = None


@dataclass(frozen=True)
class ExactlyNQuantification:
    n: int
    var: Variable
    body: "SemanticFormulation"
    restriction: "SemanticFormulation | None" = None


@dataclass(frozen=True)
class ModalFormulation:
    kind: Modality
    body: "SemanticFormulation"


SemanticFormulation = Union[
    ModalFormulation, UniversalQuantification, ExistentialQuantification,
    AtLeastNQuantification, AtMostNQuantification, ExactlyNQuantification,
    AtomicFormulation, LogicalOperation, Projection,
]

_QUANTIFICATIONS = (
    UniversalQuantification, ExistentialQuantification, AtLeastNQuantification,
    AtMostNQuantification, ExactlyNQuantification,
)

MODAL_ELEMENT = {
    Modality.OBLIGATION: "obligationFormulation",
    Modality.PROHIBITION: "prohibitionFormulation",
    Modality.NECESSITY: "necessityFormulation",
    Modality.IMPOSSIBILITY: "impossibilityFormulation",
    Modality.PERMISSION: "permissibilityFormulation",
    Modality.POSSIBILITY: "possibilityFormulation",
}


# --------------------------------------------------------------------------
# Formulation


def formulate(b: BoundRule) -> ModalFormulation:
    """Map a bound rule onto its semantic formulation (always closed)."""
    return ModalFormulation(b.ast.modality, _Formulator(b).statement_sf(b.ast.statement))


class _Formulator:
    """Two passes: plan where every variable's quantification goes, then build.

    A quantification normally sits at its noun phrase (objects wrap their
    atomic formulation, subjects wrap the whole predicate coordination).
    When the variable is also referenced elsewhere — a definite phrase in
    another predicate, junction operand or conditional branch — the
    quantification is hoisted to the lowest combining node enclosing every
    reference, keeping the formula closed.
    """

    def __init__(self, b: BoundRule):
        self.b = b
        self.introduced: set[str] = set()
        self.hoists: dict[int, list[NounPhrase]] = {}  # id(host node) -> introducer NPs
        self._plan(b)

    # --------------------------------------------------------------- planning

    def _plan(self, b: BoundRule) -> None:
        paths: dict[int, tuple] = {}

        def visit_statement(stmt, stack):
            here = stack + (stmt,)
            if isinstance(stmt, Conditional):
                visit_statement(stmt.condition, here)
                visit_statement(stmt.consequence, here)
            elif isinstance(stmt, Junction):
                for operand in stmt.operands:
                    visit_statement(operand, here)
            elif isinstance(stmt, Simple):
                visit_np(stmt.subject, here)
                for pred in stmt.predicates:
                    visit_predicate(pred, here)

        def visit_predicate(pred, stack):
            if isinstance(pred.object, NounPhrase):
                visit_np(pred.object, stack + (pred,))

        def visit_np(np, stack):
            here = stack + (np,)
            paths[id(np)] = here
            if np.qualifier is not None:
                inside = here + (np.qualifier,)
                for pred in np.qualifier.predicates:
                    visit_predicate(pred, inside)

        visit_statement(b.ast.statement, ())

        sites_of: dict[str, list[NounPhrase]] = {}
        introducer: dict[str, NounPhrase] = {}
        for np in sorted(b.var_of, key=lambda np: np.span):
            ref = b.var_of[np]
            if isinstance(ref, Variable):
                sites_of.setdefault(ref.id, []).append(np)
                if np not in b.reused and ref.id not in introducer:
                    introducer[ref.id] = np

        for var_id, sites in sites_of.items():
            intro = introducer.get(var_id)
            if intro is None:  # defensive: all sites are reuses
                intro = sites[0]
            host = self._host_for(intro, sites, paths)
            self.hoists.setdefault(id(host), []).append(intro)
        for nps in self.hoists.values():
            nps.sort(key=lambda np: np.span)

    @staticmethod
    def _host_for(intro, sites, paths):
        site_paths = [paths[id(np)] for np in sites]
        prefix = []
        for nodes in zip(*site_paths):
            first = nodes[0]
            if all(n is first for n in nodes):
                prefix.append(first)
            else:
                break

        if prefix and prefix[-1] is intro:
            # every reference lives inside the introducing phrase itself
            parent = paths[id(intro)][-2] if len(paths[id(intro)]) > 1 else None
            if isinstance(parent, Simple) and parent.subject is intro:
                return parent  # a subject scopes over all its predicates
            return intro
        for node in reversed(prefix):
            if isinstance(node, (Simple, Junction, Conditional, Qualifier)):
                return node
        return prefix[0] if prefix else intro

    # ------------------------------------------------------------ statements

    def statement_sf(self, stmt) -> SemanticFormulation:
        if isinstance(stmt, Simple):
            return self.simple_sf(stmt)
        if isinstance(stmt, Junction):
            op = LogicalOp.CONJUNCTION if stmt.op == "and" else LogicalOp.DISJUNCTION
            return self._wrap_hosted(stmt, lambda: LogicalOperation(
                op, tuple(self.statement_sf(s) for s in stmt.operands)))
        if isinstance(stmt, Conditional):
            return self._wrap_hosted(stmt, lambda: LogicalOperation(
                LogicalOp.IMPLICATION,
                (self.statement_sf(stmt.condition), self.statement_sf(stmt.consequence))))
        raise TypeError(f"not a statement: {stmt!r}")

    def simple_sf(self, simple: Simple) -> SemanticFormulation:
        def build():
            inner = self._predicate_tree(
                simple.subject, list(simple.predicates), list(simple.ops))
            subject_ref = self.b.var_of[simple.subject]
            if isinstance(subject_ref, IndividualRef) and simple.subject.qualifier is not None:
                # an individual takes no quantification; its qualifier conjoins
                constraint = self._qualifier_sf(simple.subject)
                inner = LogicalOperation(LogicalOp.CONJUNCTION, (constraint, inner))
            return inner

        return self._wrap_hosted(simple, build)

    def _predicate_tree(self, subject_np, predicates, ops) -> SemanticFormulation:
        # "and" binds tighter than "or": split the flat list into or-groups
        groups: list[list[Predicate]] = [[predicates[0]]]
        for op, pred in zip(ops, predicates[1:]):
            if op == "or":
                groups.append([pred])
            else:
                groups[-1].append(pred)

        def conjoin(group):
            parts = [self.predicate_sf(subject_np, p) for p in group]
            if len(parts) == 1:
                return parts[0]
            return LogicalOperation(LogicalOp.CONJUNCTION, tuple(parts))

        disjuncts = [conjoin(g) for g in groups]
        if len(disjuncts) == 1:
            return disjuncts[0]
        return LogicalOperation(LogicalOp.DISJUNCTION, tuple(disjuncts))

    def predicate_sf(self, subject_np: NounPhrase, pred: Predicate) -> SemanticFormulation:
        sig = self.b.bindings[pred]
        subject_role = self._role(subject_np)
        if pred.object is None:
            return AtomicFormulation(sig, (subject_role,))

        obj = pred.object
        if isinstance(obj, NumberObject):
            return AtomicFormulation(sig, (subject_role, QuantityLiteral(obj.lexeme)))
        if isinstance(obj, StringObject):
            role = IndividualConceptRef(obj.value, sig.object_term)
            return AtomicFormulation(sig, (subject_role, role))

        def build():
            atomic = AtomicFormulation(sig, (subject_role, self._role(obj)))
            obj_ref = self.b.var_of[obj]
            if isinstance(obj_ref, IndividualRef) and obj.qualifier is not None:
                constraint = self._qualifier_sf(obj)
                return LogicalOperation(LogicalOp.CONJUNCTION, (constraint, atomic))
            return atomic

        return self._wrap_hosted(obj, build)

    # ---------------------------------------------------- quantifier plumbing

    def _role(self, np: NounPhrase) -> Role:
        ref = self.b.var_of[np]
        if isinstance(ref, Variable):
            return VariableRef(ref.id, definite=np in self.b.reused)
        if isinstance(ref, IndividualRef):
            return IndividualConceptRef(ref.label, ref.concept)
        return QuantityLiteral(ref.lexeme)

    def _wrap_hosted(self, host, build) -> SemanticFormulation:
        hosted = _scope_order([
            np for np in self.hoists.get(id(host), ())
            if self.b.var_of[np].id not in self.introduced
        ])
        for np in hosted:
            self.introduced.add(self.b.var_of[np].id)
        sf = build()
        for np in reversed(hosted):
            sf = self._quantification(np, self.b.var_of[np], sf)
        return sf

    def _quantification(self, np: NounPhrase, var: Variable, body) -> SemanticFormulation:
        restriction = None
        if np.qualifier is not None:
            restriction = Projection(var, self._qualifier_sf(np))
        kind = np.determiner.kind
        n = np.determiner.n
        if kind is DeterminerKind.UNIVERSAL:
            return UniversalQuantification(var, body, restriction)
        if kind is DeterminerKind.AT_LEAST_ONE:
            return AtLeastNQuantification(1, var, body, restriction)
        if kind is DeterminerKind.AT_LEAST_N:
            return AtLeastNQuantification(n, var, body, restriction)
        if kind is DeterminerKind.AT_MOST_N:
            return AtMostNQuantification(n, var, body, restriction)
        if kind is DeterminerKind.EXACTLY_N:
            return ExactlyNQuantification(n, var, body, restriction)
        definite = kind is DeterminerKind.DEFINITE
        return ExistentialQuantification(var, body, restriction, definite=definite)

    def _qualifier_sf(self, np: NounPhrase) -> SemanticFormulation:
        qualifier = np.qualifier
        return self._wrap_hosted(qualifier, lambda: self._predicate_tree(
            np, list(qualifier.predicates), list(qualifier.ops)))


def _scope_order(nps: list[NounPhrase]) -> list[NounPhrase]:
    """Outermost-first wrap order for quantifications hoisted to one node.

    Source order, except that an introducer nested inside another phrase
    must scope outside its container: once hoisted, the container's
    restriction references it.
    """
    remaining = sorted(nps, key=lambda np: np.span)
    result: list[NounPhrase] = []
    while remaining:
        for i, np in enumerate(remaining):
            if not any(_contains(np, other) for other in remaining if other is not np):
                result.append(remaining.pop(i))
                break
        else:
            result.append(remaining.pop(0))
    return result


def _contains(outer: NounPhrase, inner: NounPhrase) -> bool:
    return outer.span[0] <= inner.span[0] and inner.span[1] <= outer.span[1]


# --------------------------------------------------------------------------
# Independent well-formedness oracle


def validate_sf(sf) -> list[str]:
    """Violations of the formulation invariants; empty means well-formed.

    Checks closedness, role arity against the fact type, logical-operation
    arity and quantifier cardinalities, with no code shared with formulate.
    """
    problems: list[str] = []

    def walk(node, scope: frozenset) -> None:
        if isinstance(node, ModalFormulation):
            walk(node.body, scope)
        elif isinstance(node, _QUANTIFICATIONS):
            n = getattr(node, "n", None)
            if n is not None and n < 1:
                problems.append(f"quantifier cardinality must be >= 1, got {n}")
            inner = scope | {node.var.id}
            if node.restriction is not None:
                walk(node.restriction, inner)
            walk(node.body, inner)
        elif isinstance(node, Projection):
            walk(node.constraint, scope | {node.var.id})
        elif isinstance(node, LogicalOperation):
            if node.op is LogicalOp.IMPLICATION and len(node.operands) != 2:
                problems.append(
                    f"implication needs exactly 2 operands, got {len(node.operands)}")
            elif node.op is not LogicalOp.IMPLICATION and len(node.operands) < 2:
                problems.append(
                    f"{node.op.value} needs at least 2 operands, got {len(node.operands)}")
            for operand in node.operands:
                walk(operand, scope)
        elif isinstance(node, AtomicFormulation):
            arity = 1 if node.fact_type.object_term is None else 2
            if len(node.roles) != arity:
                problems.append(
                    f"atomic formulation over '{node.fact_type.render()}' has "
                    f"{len(node.roles)} roles, fact type arity is {arity}")
            for role in node.roles:
                if isinstance(role, VariableRef) and role.ref not in scope:
                    problems.append(f"unbound variable {role.ref}")
        else:
            problems.append(f"unexpected node {type(node).__name__}")

    walk(sf, frozenset())
    return problems


# --------------------------------------------------------------------------
# XML


def to_xml(sf: SemanticFormulation) -> str:
    """Deterministic XML rendering: one element per node, 2-space indent."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    _write(sf, out, 0)
    return "\n".join(out) + "\n"


def ruleset_to_xml(formulations: list[SemanticFormulation]) -> str:
    """One document wrapping each rule's formulation, input order preserved."""
    if not formulations:
        return '<?xml version="1.0" encoding="UTF-8"?>\n<ruleSet/>\n'
    out = ['<?xml version="1.0" encoding="UTF-8"?>', "<ruleSet>"]
    for sf in formulations:
        _write(sf, out, 1)
    out.append("</ruleSet>")
    return "\n".join(out) + "\n"


def _write(node, out: list[str], depth: int) -> None:
    pad = "  " * depth

    def open_tag(name: str, attrs: list[tuple[str, str]], children: bool) -> None:
        rendered = "".join(f" {k}={quoteattr(v)}" for k, v in attrs)
        out.append(f"{pad}<{name}{rendered}{'>' if children else '/>'}")

    if isinstance(node, ModalFormulation):
        name = MODAL_ELEMENT[node.kind]
        open_tag(name, [], True)
        _write(node.body, out, depth + 1)
        out.append(f"{pad}</{name}>")
    elif isinstance(node, _QUANTIFICATIONS):
        name = _QUANT_ELEMENT[type(node)]
        attrs = []
        if isinstance(node, (AtLeastNQuantification, AtMostNQuantification,
                             ExactlyNQuantification)):
            attrs.append(("n", str(node.n)))
        if isinstance(node, ExistentialQuantification) and node.definite:
            attrs.append(("definite", "true"))
        open_tag(name, attrs, True)
        _write_variable(node.var, out, depth + 1)
        if node.restriction is not None:
            _write(node.restriction, out, depth + 1)
        _write(node.body, out, depth + 1)
        out.append(f"{pad}</{name}>")
    elif isinstance(node, Projection):
        open_tag("projection", [], True)
        _write_variable(node.var, out, depth + 1)
        _write(node.constraint, out, depth + 1)
        out.append(f"{pad}</projection>")
    elif isinstance(node, LogicalOperation):
        open_tag(node.op.value, [], True)
        for operand in node.operands:
            _write(operand, out, depth + 1)
        out.append(f"{pad}</{node.op.value}>")
    elif isinstance(node, AtomicFormulation):
        sig = node.fact_type
        attrs = [("subject", sig.subject_term), ("verb", sig.verb_text)]
        if sig.object_term is not None:
            attrs.append(("object", sig.object_term))
        attrs.append(("form", sig.form.value))
        open_tag("atomicFormulation", [], True)
        inner = "  " * (depth + 1)
        rendered = "".join(f" {k}={quoteattr(v)}" for k, v in attrs)
        out.append(f"{inner}<factType{rendered}/>")
        for role in node.roles:
            _write(role, out, depth + 1)
        out.append(f"{pad}</atomicFormulation>")
    elif isinstance(node, VariableRef):
        attrs = [("ref", node.ref)]
        if node.definite:
            attrs.append(("definite", "true"))
        open_tag("variableRef", attrs, False)
    elif isinstance(node, IndividualConceptRef):
        attrs = [("name", node.name)]
        if node.concept is not None:
            attrs.append(("nounConcept", node.concept))
        open_tag("individualConceptRef", attrs, False)
    elif isinstance(node, QuantityLiteral):
        open_tag("quantityLiteral", [("value", node.value)], False)
    else:
        raise TypeError(f"cannot serialize {type(node).__name__}")


def _write_variable(var: Variable, out: list[str], depth: int) -> None:
    pad = "  " * depth
    out.append(f'{pad}<variable id={quoteattr(var.id)} nounConcept={quoteattr(var.ranges_over)}/>')


_QUANT_ELEMENT = {
    UniversalQuantification: "universalQuantification",
    ExistentialQuantification: "existentialQuantification",
    AtLeastNQuantification: "atLeastNQuantification",
    AtMostNQuantification: "atMostNQuantification",
    ExactlyNQuantification: "exactlyNQuantification",
}

_ELEMENT_QUANT = {name: cls for cls, name in _QUANT_ELEMENT.items()}
_ELEMENT_MODALITY = {name: m for m, name in MODAL_ELEMENT.items()}
_ELEMENT_LOGICAL = {op.value: op for op in LogicalOp}


def parse_xml(text: str) -> SemanticFormulation:
    """Read a formulation back from its XML rendering (inverse of to_xml)."""
    return _read(ElementTree.fromstring(text))


def parse_ruleset_xml(text: str) -> list[SemanticFormulation]:
    root = ElementTree.fromstring(text)
    if root.tag != "ruleSet":
        raise ValueError(f"expected a ruleSet document, got <{root.tag}>")
    return [_read(child) for child in root]


def _read(el: ElementTree.Element) -> SemanticFormulation:
    tag = el.tag
    if tag in _ELEMENT_MODALITY:
        (body,) = list(el)
        return ModalFormulation(_ELEMENT_MODALITY[tag], _read(body))
    if tag in _ELEMENT_QUANT:
        children = list(el)
        var = _read_variable(children[0])
        restriction = _read(children[1]) if len(children) == 3 else None
        body = _read(children[-1])
        cls = _ELEMENT_QUANT[tag]
        if cls is UniversalQuantification:
            return UniversalQuantification(var, body, restriction)
        if cls is ExistentialQuantification:
            return ExistentialQuantification(
                var, body, restriction, definite=el.get("definite") == "true")
        return cls(int(el.get("n")), var, body, restriction)
    if tag in _ELEMENT_LOGICAL:
        return LogicalOperation(_ELEMENT_LOGICAL[tag], tuple(_read(c) for c in el))
    if tag == "projection":
        children = list(el)
        return Projection(_read_variable(children[0]), _read(children[1]))
    if tag == "atomicFormulation":
        children = list(el)
        fact = children[0]
        if fact.tag != "factType":
            raise ValueError(f"expected <factType>, got <{fact.tag}>")
        sig = VerbSignature(
            fact.get("subject"), fact.get("verb"), fact.get("object"),
            VerbForm(fact.get("form")))
        return AtomicFormulation(sig, tuple(_read_role(c) for c in children[1:]))
    raise ValueError(f"unexpected element <{tag}>")


def _read_variable(el: ElementTree.Element) -> Variable:
    if el.tag != "variable":
        raise ValueError(f"expected <variable>, got <{el.tag}>")
    return Variable(el.get("id"), el.get("nounConcept"))


def _read_role(el: ElementTree.Element) -> Role:
    if el.tag == "variableRef":
        return VariableRef(el.get("ref"), definite=el.get("definite") == "true")
    if el.tag == "individualConceptRef":
        return IndividualConceptRef(el.get("name"), el.get("nounConcept"))
    if el.tag == "quantityLiteral":
        return QuantityLiteral(el.get("value"))
    raise ValueError(f"unexpected role element <{el.tag}>")
