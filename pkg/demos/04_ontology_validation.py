# coding: utf-8

# # Checking predictions against the ontology
#
# A parser can output labels the ontology does not license: a frame that
# does not exist, a role from another frame, an LU paired with the wrong
# frame, a role filled twice or a span past the end of the sentence.

from pathlib import Path

from framekit import consistency_rate, load_corpus, load_predictions, validate

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
corpus = load_corpus(DATA / "golden_corpus.jsonl")

preds = load_predictions(DATA / "violations_preds.jsonl")
annotations = [a for ps in preds.values() for a in ps.annotations]
violations = validate(corpus, annotations, corpus.sentence_index)
for v in violations:
    print(v.to_json())


# The consistency rate is the share of annotations with no violation at all.

print(f"{consistency_rate(violations, annotations):.4f}")


# Duplicate roles are warnings by default, since some frames allow them.
# The severity map can be overridden.

strict = validate(corpus, annotations, corpus.sentence_index,
                  severity={"duplicate_core_role": "error"})
print(sorted({v.severity for v in strict}))
