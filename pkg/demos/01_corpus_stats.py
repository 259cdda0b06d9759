# coding: utf-8

# # Corpus statistics
#
# An exemplar corpus annotates one or a few predicates per sentence. This
# demo loads the small stats fixture shipped with the tests and prints the
# counts by language, frame and lexical unit.

from pathlib import Path

from framekit import corpus_stats, load_corpus

ROOT = Path(__file__).resolve().parent.parent
corpus = load_corpus(ROOT / "tests" / "data" / "stats_fixture.jsonl")
print(len(corpus.sentences), "sentences,", len(corpus.annotations), "annotations")


# The report counts annotations, not sentences, except for `unique_sentences`.

report = corpus_stats(corpus, top_k=5)
print(report.format_table())


# The same LU id can exist in several languages (corner.n in EN and FR here).
# By default each (id, language) pair is its own row; `merge_lu_languages`
# folds them together.

merged = corpus_stats(corpus, top_k=5, merge_lu_languages=True)
for name, count in merged.top_by_lu:
    print(f"{name:20s} {count}")


# Annotation order does not matter for any of the counts.

shuffled = corpus.with_content(corpus.sentences, tuple(reversed(corpus.annotations)))
assert corpus_stats(shuffled).to_dict() == report.to_dict()
