import json

import pytest
from hypothesis import given, settings, strategies as st

from framekit.corpus import Corpus, CorpusKind, Sentence
from framekit.errors import SplitError, UnknownSentenceError
from framekit.splitter import (
    PARTITIONS,
    SplitAssignment,
    SplitRatios,
    apportion,
    project,
    split_corpus,
)
from framekit.synthetic import synthetic_corpus

DEFAULT_RATIOS = SplitRatios(0.85, 0.05, 0.10)


def bare_corpus(n):
    sents = tuple(Sentence(f"s{i:05d}", "EN", ("w",), "w") for i in range(n))
    return Corpus(sentences=sents, kind=CorpusKind.FULLTEXT)


@pytest.mark.parametrize(
    "n, expected",
    [
        # 6334.2 / 372.6 / 745.2: the one leftover seat goes to dev
        (7452, {"train": 6334, "dev": 373, "test": 745}),
        (100, {"train": 85, "dev": 5, "test": 10}),
        (20, {"train": 17, "dev": 1, "test": 2}),
    ],
)
def test_apportion_expected_sizes(n, expected):
    assert apportion(n, DEFAULT_RATIOS) == expected
    assert split_corpus(bare_corpus(n), DEFAULT_RATIOS, seed=5).sizes() == expected


def test_apportion_tie_order():
    # quotas 1.5 / 0.75 / 0.75: two leftover seats go to the .75 remainders
    assert apportion(3, SplitRatios(0.5, 0.25, 0.25)) == {"train": 1, "dev": 1, "test": 1}
    # quotas 1 / .5 / .5: one seat, dev and test tie, test wins
    assert apportion(2, SplitRatios(0.5, 0.25, 0.25)) == {"train": 1, "dev": 0, "test": 1}
    # quotas .4 / .2 / .4: one seat, train and test tie, train wins
    assert apportion(1, SplitRatios(0.4, 0.2, 0.4)) == {"train": 1, "dev": 0, "test": 0}


@pytest.mark.parametrize("text", ["0.9,0.05,0.1", "1,0,0", "0.5,0.5", "a,b,c"])
def test_invalid_ratios(text):
    with pytest.raises(SplitError):
        SplitRatios.parse(text)


def test_too_few_sentences():
    with pytest.raises(SplitError):
        split_corpus(bare_corpus(2), DEFAULT_RATIOS, 0)


def test_same_seed_same_bytes(tmp_path):
    corpus = bare_corpus(500)
    split_corpus(corpus, DEFAULT_RATIOS, 11).save(tmp_path / "a.jsonl")
    split_corpus(corpus, DEFAULT_RATIOS, 11).save(tmp_path / "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()
    split_corpus(corpus, DEFAULT_RATIOS, 12).save(tmp_path / "c.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() != (tmp_path / "c.jsonl").read_bytes()


def test_input_order_does_not_matter():
    corpus = bare_corpus(40)
    reversed_corpus = Corpus(sentences=corpus.sentences[::-1], kind=CorpusKind.FULLTEXT)
    assert split_corpus(corpus, DEFAULT_RATIOS, 3) == split_corpus(reversed_corpus, DEFAULT_RATIOS, 3)


def test_split_file_round_trip(tmp_path, data_dir):
    a = split_corpus(bare_corpus(37), DEFAULT_RATIOS, 8)
    a.save(tmp_path / "a.jsonl")
    b = SplitAssignment.load(tmp_path / "a.jsonl")
    assert b == a
    b.save(tmp_path / "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()
    header = json.loads((tmp_path / "a.jsonl").read_text().splitlines()[0])
    assert header == {"type": "split", "seed": 8, "ratios": [0.85, 0.05, 0.1]}

    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((data_dir.parent.parent / "docs" / "schema" / "split.schema.json").read_text())
    for line in a.lines():
        jsonschema.validate(json.loads(line), schema)


def test_projection_partitions_corpus():
    corpus = synthetic_corpus(20, seed=2, gap_rate=0.3)
    a = split_corpus(corpus, DEFAULT_RATIOS, 4)
    parts = {p: project(corpus, a, p) for p in PARTITIONS}
    assert len(parts["train"].sentences) == 17
    ids = [s.id for p in parts.values() for s in p.sentences]
    assert sorted(ids) == sorted(s.id for s in corpus.sentences)
    assert sum(len(p.annotations) for p in parts.values()) == len(corpus.annotations)
    for name, part in parts.items():
        assert part.frames == corpus.frames
        assert {a.sentence_id for a in part.annotations} <= {s.id for s in part.sentences}
        assert all(a.partition_of[s.id] == name for s in part.sentences)


def test_projection_rejects_mismatched_split():
    corpus = synthetic_corpus(10, seed=1)
    a = split_corpus(synthetic_corpus(12, seed=1), DEFAULT_RATIOS, 0)
    with pytest.raises(UnknownSentenceError):
        project(corpus, a, "train")


@settings(max_examples=200, deadline=None)
@given(n=st.integers(3, 3000), seed=st.integers(0, 2**64 - 1))
def test_split_laws(n, seed):
    a = split_corpus(bare_corpus(n), DEFAULT_RATIOS, seed)
    assert sorted(a.partition_of) == [f"s{i:05d}" for i in range(n)]
    sizes = a.sizes()
    assert sum(sizes.values()) == n
    for p in PARTITIONS:
        assert abs(sizes[p] - getattr(DEFAULT_RATIOS, p) * n) <= 1
