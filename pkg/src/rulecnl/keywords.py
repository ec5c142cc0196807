"""Fixed keyword phrases of the rule language, kept as data so another
locale's table can be swapped in without touching the lexer or parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .ast import Modality


@dataclass(frozen=True)
class KeywordTable:
    modalities: Mapping[str, Modality]     # lowercase phrase -> modality
    quantifiers: tuple[str, ...]           # lowercase, may be multi-word
    coordinators: frozenset[str]
    subordinators: frozenset[str]
    determiners: frozenset[str]
    locale: str = "en"

    def __post_init__(self):
        assert self.modalities and self.quantifiers
        for phrase in list(self.modalities) + list(self.quantifiers):
            assert phrase == phrase.lower().strip()

    def modality_phrases(self) -> tuple[str, ...]:
        return tuple(self.modalities)

    def relative_pronouns(self) -> frozenset[str]:
        return frozenset({"who", "that", "which"}) & self.subordinators


ENGLISH = KeywordTable(
    modalities=MappingProxyType({
        "it is obligatory that": Modality.OBLIGATION,
        "it is prohibited that": Modality.PROHIBITION,
        "it is necessary that": Modality.NECESSITY,
        "it is impossible that": Modality.IMPOSSIBILITY,
        "it is permitted that": Modality.PERMISSION,
        "it is possible that": Modality.POSSIBILITY,
    }),
    quantifiers=("each", "some", "at least one", "at least", "at most", "exactly"),
    coordinators=frozenset({"and", "or"}),
    subordinators=frozenset({"if", "then", "who", "that", "which"}),
    determiners=frozenset({"a", "an", "the", "each"}),
)


def display_phrase(phrase: str) -> str:
    """Sentence-case form used when offering a phrase as a completion."""
    return phrase[0].upper() + phrase[1:] if phrase else phrase
