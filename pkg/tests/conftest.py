import json
from pathlib import Path

import pytest

from confabga.lexicon import Lexicons

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def lexicons():
    return Lexicons.bundled()


@pytest.fixture(scope="session")
def gold():
    return json.loads((FIXTURES / "gold.json").read_text(encoding="utf-8"))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def token_in(target: str, surface: str):
    """AnalyzedToken for ``surface`` with its left neighbour from ``target``."""
    from confabga.classifier import AnalyzedToken
    from confabga.pipeline import tokenize

    toks = tokenize(target)
    for i, t in enumerate(toks):
        if t.text == surface:
            return AnalyzedToken(surface, 0, i, toks[i - 1].text if i else None)
    return AnalyzedToken(surface)
