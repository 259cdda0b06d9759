# coding: utf-8

# # Scoring predictions from another parser
#
# Any system can be scored if it writes the prediction interchange format:
# one JSON line per predicted annotation. Here we hand-write the output of a
# hypothetical neural parser for the test fixture, including a prediction on
# a predicate the gold corpus never annotated.

import json
import tempfile
from pathlib import Path

from framekit import load_corpus, load_predictions
from framekit.evaluation import format_table, score_modes

ROOT = Path(__file__).resolve().parent.parent
gold = load_corpus(ROOT / "tests" / "data" / "golden_corpus.jsonl")

rows = [
    {"sentence_id": "s2", "target": {"start": 1, "end": 2}, "frame": "Shot",
     "roles": [{"role": "Shooter", "start": 0, "end": 1, "confidence": 1.0},
               {"role": "Ball", "start": 2, "end": 4, "confidence": 0.8}],
     "frame_confidence": 1.0, "provenance": "neural-xlmr"},
    # "the ball" is not a gold predicate: a RAW false positive
    {"sentence_id": "s2", "target": {"start": 3, "end": 4}, "frame": "Shot",
     "roles": [], "frame_confidence": 1.0, "provenance": "neural-xlmr"},
    {"sentence_id": "s3", "target": {"start": 1, "end": 2}, "frame": "Shot",
     "roles": [{"role": "Shooter", "start": 0, "end": 1, "confidence": 1.0}],
     "frame_confidence": 0.6, "provenance": "neural-xlmr"},
]
path = Path(tempfile.mkdtemp()) / "neural.jsonl"
path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")
preds = load_predictions(path)


# Sentences missing from the file (s1 here) count as "predicted nothing".
# At threshold 1.0 the s3 frame (0.6) and the s2 Ball role (0.8) drop out.

for threshold in (1.0, 0.5):
    print(f"\nthreshold {threshold}")
    print(format_table([("neural-xlmr", score_modes(gold, preds, threshold=threshold))]))
