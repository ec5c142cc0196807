"""RuleCNL: a controlled natural language toolchain for business rules.

Pipeline: vocabulary -> tokens -> rule tree -> bound rule -> semantic
formulation -> XML. The service module wraps the pipeline for editors;
the cli module for batch use.
"""

from .ast import Modality, RuleAst, render_rule
from .binder import BoundRule, bind, candidate_verbs
from .diagnostics import ALL_CODES, Diagnostic, Severity
from .grammar import Expectation, ExpKind, expected_next, parse_rule
from .keywords import ENGLISH, KeywordTable
from .lexer import HighlightClass, Lexer, Token, TokenKind, classify_for_highlighting, tokenize
from .sbvr import formulate, parse_xml, ruleset_to_xml, to_xml, validate_sf
from .service import CompletionItem, compile_rules, complete, highlight
from .vocab import (
    BUILTIN_COMPARISONS, DomainName, DomainTerm, VerbForm, VerbSignature,
    Vocabulary, link_passive_pairs, lookup_term, parse_vocabulary,
    serialize_vocabulary, verbs_for_subject,
)

__version__ = "0.1.0"
