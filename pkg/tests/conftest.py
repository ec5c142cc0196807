import pathlib

import pytest

from rulecnl.lexer import Lexer
from rulecnl.vocab import parse_vocabulary

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def paper_vocab_text():
    return (DATA / "paper.vocab").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def paper_rules_text():
    return (DATA / "paper.rules").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def paper_rules():
    lines = (DATA / "paper.rules").read_text(encoding="utf-8").splitlines()
    return [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


@pytest.fixture(scope="session")
def paper_vocab(paper_vocab_text):
    result = parse_vocabulary(paper_vocab_text)
    assert result.ok and not result.diagnostics
    return result.vocabulary


@pytest.fixture(scope="session")
def paper_lexer(paper_vocab):
    return Lexer(paper_vocab)


@pytest.fixture(scope="session")
def golden_xml():
    return (DATA / "paper_rules.golden.xml").read_text(encoding="utf-8")
