"""Diagnostics shared by every pipeline stage.

Spans are byte offsets (start, end) into the UTF-8 encoding of whichever
document the diagnostic belongs to; ``source`` names that document.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# Vocabulary loading
VOCAB_SYNTAX = "RCNL-VOCAB-SYNTAX"
DUP_TERM = "RCNL-DUP-TERM"
DUP_NAME = "RCNL-DUP-NAME"
DUP_VERB = "RCNL-DUP-VERB"
TERM_ARTICLE = "RCNL-TERM-ARTICLE"
UNDECLARED_TERM = "RCNL-UNDECLARED-TERM"
UNPAIRED_PASSIVE = "RCNL-UNPAIRED-PASSIVE"

# Lexing / parsing
UNKNOWN_WORD = "RCNL-UNKNOWN-WORD"
MISSING_MODALITY = "RCNL-MISSING-MODALITY"
EXPECTED_VERB = "RCNL-EXPECTED-VERB"
EXPECTED_NOUN_PHRASE = "RCNL-EXPECTED-NOUN-PHRASE"
BAD_QUANTIFIER = "RCNL-BAD-QUANTIFIER"
DANGLING_COORDINATOR = "RCNL-DANGLING-COORDINATOR"
TRAILING_INPUT = "RCNL-TRAILING-INPUT"

# Binding
NO_SUCH_VERB = "RCNL-NO-SUCH-VERB"
AMBIGUOUS_VERB = "RCNL-AMBIGUOUS-VERB"
TYPE_MISMATCH = "RCNL-TYPE-MISMATCH"
UNRESOLVED_DEFINITE = "RCNL-UNRESOLVED-DEFINITE"

#: The published, closed set of diagnostic codes.
ALL_CODES = frozenset({
    VOCAB_SYNTAX, DUP_TERM, DUP_NAME, DUP_VERB, TERM_ARTICLE,
    UNDECLARED_TERM, UNPAIRED_PASSIVE,
    UNKNOWN_WORD, MISSING_MODALITY, EXPECTED_VERB, EXPECTED_NOUN_PHRASE,
    BAD_QUANTIFIER, DANGLING_COORDINATOR, TRAILING_INPUT,
    NO_SUCH_VERB, AMBIGUOUS_VERB, TYPE_MISMATCH, UNRESOLVED_DEFINITE,
})

Span = tuple[int, int]


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: Span
    source: str = "rule"  # "vocab" or "rule": which submitted document the span indexes
    related_spans: tuple[Span, ...] = ()

    def is_error(self) -> bool:
        return self.severity is Severity.ERROR


def error(code: str, message: str, span: Span, source: str = "rule") -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, source)


def warning(code: str, message: str, span: Span, source: str = "rule") -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span, source)


def line_col(text: str, byte_offset: int) -> tuple[int, int]:
    """1-based (line, column) of a byte offset into ``text``'s UTF-8 form.

    Columns count bytes, matching the span convention.
    """
    data = text.encode("utf-8")
    byte_offset = max(0, min(byte_offset, len(data)))
    line_start = data.rfind(b"\n", 0, byte_offset) + 1
    line = data.count(b"\n", 0, byte_offset) + 1
    return line, byte_offset - line_start + 1
