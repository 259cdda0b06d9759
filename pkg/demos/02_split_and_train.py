# coding: utf-8

# # Split, train, predict
#
# A 200-sentence corpus from the built-in football grammar. Some sentences
# get a second, unannotated clause: that is the "gap" typical of exemplar
# corpora, and it is what depresses RAW precision later on.

from framekit import SplitRatios, split_corpus
from framekit.synthetic import synthetic_corpus
from framekit.evaluation import Mode, score_modes
from framekit.parser import frame_accuracy, predict_corpus, train
from framekit.splitter import project

corpus = synthetic_corpus(200, seed=0, gap_rate=0.3)
print(corpus.sentences[0].text)
print(corpus.annotations[0])


# ## Deterministic split
#
# SplitMix64 drives a Fisher-Yates shuffle of the sorted sentence ids, and
# largest-remainder apportionment fixes the partition sizes.

assignment = split_corpus(corpus, SplitRatios.parse("0.85,0.05,0.10"), seed=1)
print(assignment.sizes())
assert split_corpus(corpus, SplitRatios(), seed=1).lines() == assignment.lines()

train_part = project(corpus, assignment, "train")
test_part = project(corpus, assignment, "test")


# ## Training
#
# The lexicon maps surface forms to (LU, frame) candidates; the averaged
# perceptron picks a frame per target and tags roles with BIO labels.

model, lexicon = train(train_part, epochs=10, seed=0)
print("lexicon entries:", len(lexicon))
print("train frame accuracy:", frame_accuracy(model, lexicon, train_part))


# ## Prediction and scoring
#
# Role confidences are softmax probabilities, so a threshold of 1.0 would
# drop nearly all of them. Score at 0 to see the whole output.

preds = {p.sentence_id: p for p in predict_corpus(model, lexicon, test_part)}
for mode, rep in score_modes(test_part, preds, threshold=0.0).items():
    print(f"{mode.value:9s} frames P={rep.frames.precision:.3f} R={rep.frames.recall:.3f}"
          f"  roles P={rep.roles.precision:.3f} R={rep.roles.recall:.3f}")

# RAW precision is lower: the parser also labels the unannotated clauses.
# RAW role recall can come out lower too. A token holds one role label, and
# a role the parser found for an unannotated clause can win that token from
# the role of the annotated predicate (see docs/formats.md, "Collisions").
reports = score_modes(test_part, preds, threshold=0.0)
assert reports[Mode.GOLD_PRED].frames.precision >= reports[Mode.RAW].frames.precision
