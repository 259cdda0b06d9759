import json
import random

import pytest

from framekit.corpus import Annotation, Corpus, FrameDef, LexicalUnitDef, RoleFill, Scene, Sentence, Span
from framekit.errors import UnknownSentenceError
from framekit.ontology import ViolationKind as K, consistency_rate, validate
from framekit.predictions import load_predictions
from framekit.synthetic import synthetic_corpus


def flat(preds):
    return [a for ps in preds.values() for a in ps.annotations]


def test_clean_gold_validates(golden):
    assert validate(golden, golden.annotations, golden.sentence_index) == []
    corpus = synthetic_corpus(60, seed=4, gap_rate=0.3)
    assert validate(corpus, corpus.annotations, corpus.sentence_index) == []


def test_clean_predictions(golden, data_dir):
    anns = flat(load_predictions(data_dir / "clean_preds.jsonl"))
    assert validate(golden, anns, golden.sentence_index) == []
    assert consistency_rate([], anns) == 1.0


def test_one_violation_of_each_kind(golden, data_dir):
    anns = flat(load_predictions(data_dir / "violations_preds.jsonl"))
    got = validate(golden, anns, golden.sentence_index)
    assert [(v.kind, v.sentence_id, v.annotation_index) for v in got] == [
        (K.UNKNOWN_FRAME, "s2", 0),
        (K.ROLE_NOT_IN_FRAME, "s2", 1),
        (K.LU_FRAME_MISMATCH, "s1", 2),
        (K.DUPLICATE_CORE_ROLE, "s1", 3),
        (K.SPAN_OVERFLOW, "s3", 4),
    ]
    assert got[3].severity == "warning"
    assert all(v.severity == "error" for v in got if v.kind is not K.DUPLICATE_CORE_ROLE)
    assert consistency_rate(got, anns) == 1 / 6


def test_role_not_in_frame_example():
    corpus = Corpus(
        scenes=(Scene("Attack", ("Shot",)),),
        frames=(FrameDef("Shot", "Attack", frozenset({"Shooter", "Ball"})),),
        sentences=(Sentence("s", "EN", ("Kane", "shoots"), ""),),
    )
    ann = Annotation("s", Span(1, 2), "Shot", (RoleFill("Goalkeeper", Span(0, 1)),))
    got = validate(corpus, [ann], corpus.sentence_index)
    assert [v.kind for v in got] == [K.ROLE_NOT_IN_FRAME]
    assert "Goalkeeper" in got[0].detail


def test_lu_frame_mismatch_example():
    corpus = Corpus(
        scenes=(Scene("Match", ("Shot", "Victory")),),
        frames=(FrameDef("Shot", "Match", frozenset({"Shooter"})),
                FrameDef("Victory", "Match", frozenset({"Winner"}))),
        lexical_units=(LexicalUnitDef("win.v", "EN", "Victory"),),
        sentences=(Sentence("s", "EN", ("Ajax", "win"), ""),),
    )
    bad = Annotation("s", Span(1, 2), "Shot", lu_id="win.v")
    good = Annotation("s", Span(1, 2), "Victory", lu_id="win.v")
    got = validate(corpus, [bad, good], corpus.sentence_index)
    assert [(v.kind, v.annotation_index) for v in got] == [(K.LU_FRAME_MISMATCH, 0)]
    unknown = Annotation("s", Span(1, 2), "Victory", lu_id="lose.v")
    assert [v.kind for v in validate(corpus, [unknown], corpus.sentence_index)] == [K.LU_FRAME_MISMATCH]


def test_polysemous_lu_accepts_any_listed_frame():
    corpus = Corpus(
        scenes=(Scene("Match", ("Shot", "Victory")),),
        frames=(FrameDef("Shot", "Match", frozenset({"Shooter"})),
                FrameDef("Victory", "Match", frozenset({"Winner"}))),
        lexical_units=(LexicalUnitDef("treffen.v", "DE", "Shot"), LexicalUnitDef("treffen.v", "FR", "Victory")),
        sentences=(Sentence("s", "DE", ("Kane", "trifft"), ""),),
    )
    ok = Annotation("s", Span(1, 2), "Shot", lu_id="treffen.v")
    other_lang = Annotation("s", Span(1, 2), "Victory", lu_id="treffen.v")
    assert validate(corpus, [ok], corpus.sentence_index) == []
    assert [v.kind for v in validate(corpus, [other_lang], corpus.sentence_index)] == [K.LU_FRAME_MISMATCH]


def test_unknown_sentence_raises(golden):
    with pytest.raises(UnknownSentenceError):
        validate(golden, [Annotation("nope", Span(0, 1), "Shot")], golden.sentence_index)


def test_severity_override(golden, data_dir):
    anns = flat(load_predictions(data_dir / "violations_preds.jsonl"))
    got = validate(golden, anns, golden.sentence_index, severity={K.DUPLICATE_CORE_ROLE: "error"})
    assert {v.severity for v in got} == {"error"}


def test_consistency_rate_arithmetic():
    anns = [Annotation("s", Span(0, 1), "Shot")] * 4
    from framekit.ontology import Violation
    assert consistency_rate([], []) == 1.0
    assert consistency_rate([], anns) == 1.0
    every = [Violation(K.UNKNOWN_FRAME, "s", i, "") for i in range(4)]
    assert consistency_rate(every, anns) == 0.0
    # two violations on one annotation still leave 3 of 4 clean
    one = [Violation(K.UNKNOWN_FRAME, "s", 2, ""), Violation(K.SPAN_OVERFLOW, "s", 2, "")]
    assert consistency_rate(one, anns) == 0.75


def test_order_independence(golden, data_dir):
    anns = flat(load_predictions(data_dir / "violations_preds.jsonl"))
    base = validate(golden, anns, golden.sentence_index)
    key = lambda a: (a.sentence_id, a.target, a.frame_name, a.role_fills, a.lu_id)  # noqa: E731
    as_set = lambda vs, xs: sorted((v.kind.value, v.detail, repr(key(xs[v.annotation_index]))) for v in vs)  # noqa: E731
    rng = random.Random(1)
    for _ in range(10):
        shuffled = anns[:]
        rng.shuffle(shuffled)
        assert as_set(validate(golden, shuffled, golden.sentence_index), shuffled) == as_set(base, anns)


def test_violation_json_schema(golden, data_dir):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((data_dir.parent.parent / "docs" / "schema" / "violation.schema.json").read_text())
    anns = flat(load_predictions(data_dir / "violations_preds.jsonl"))
    for v in validate(golden, anns, golden.sentence_index):
        jsonschema.validate(json.loads(v.to_json()), schema)
