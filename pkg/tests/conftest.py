from pathlib import Path

import pytest

from framekit.corpus import load_corpus
from framekit.synthetic import synthetic_corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def golden_path():
    return DATA / "golden_corpus.jsonl"


@pytest.fixture
def golden(golden_path):
    return load_corpus(golden_path)


@pytest.fixture(scope="session")
def separable():
    """50 sentences, every target form unambiguous."""
    return synthetic_corpus(50, seed=3)
