"""
Baseline frame-semantic parser
==============================

Three stages, run left to right over a tokenized sentence:

1. target identification: longest lowercase match against target forms seen
   in training, scanning left to right, filtered by language;
2. frame identification: an averaged perceptron scores the frames the
   matched lexicon entry licenses;
3. role identification: a second averaged perceptron tags tokens with
   ``B-role`` / ``I-role`` / ``O`` greedily, repairing an ``I-`` label that
   does not continue a span of the same role into ``B-``.

Confidences are softmax probabilities of the chosen decision. A frame
licensed by a single lexicon candidate therefore gets exactly 1.0; a role fill
gets the minimum probability over its tokens.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Annotation, Corpus, CorpusKind, RoleFill, Sentence, Span
from .errors import EmptyTrainingDataError, ModelFormatError, ModelVersionError
from .perceptron import AveragedPerceptron, softmax
from .predictions import PredictionSet
from .rng import SplitMix64, shuffle

log = logging.getLogger(__name__)

MODEL_VERSION = "framekit-model/1"
FEATURE_TEMPLATE = "ft1"
OUTSIDE = "O"


class Lexicon:
    """Observed target forms -> {(lu_id, frame_name): count}, per language."""

    def __init__(self):
        self.entries: dict[tuple[str, tuple[str, ...]], dict[tuple, int]] = {}

    def add(self, language: str, forms, lu_id, frame_name: str, count: int = 1) -> None:
        key = (language, tuple(f.lower() for f in forms))
        cands = self.entries.setdefault(key, {})
        cands[(lu_id, frame_name)] = cands.get((lu_id, frame_name), 0) + count

    def lookup(self, language: str, forms) -> dict[tuple, int]:
        return self.entries.get((language, tuple(f.lower() for f in forms)), {})

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        language, forms = key
        return (language, tuple(f.lower() for f in forms)) in self.entries

    def max_length(self, language: str) -> int:
        return max((len(forms) for lang, forms in self.entries if lang == language), default=0)

    def match(self, sentence: Sentence) -> list[Span]:
        """Maximal non-overlapping matches, longest first, scanning left to right."""
        longest = self.max_length(sentence.language)
        lowered = [t.lower() for t in sentence.tokens]
        spans, i = [], 0
        while i < len(lowered):
            for n in range(min(longest, len(lowered) - i), 0, -1):
                if (sentence.language, tuple(lowered[i:i + n])) in self.entries:
                    spans.append(Span(i, i + n))
                    i += n
                    break
            else:
                i += 1
        return spans

    def to_list(self) -> list:
        out = []
        for (lang, forms), cands in sorted(self.entries.items()):
            rows = sorted(
                ([lu, frame, n] for (lu, frame), n in cands.items()),
                key=lambda r: (r[0] is not None, r[0] or "", r[1]),
            )
            out.append({"language": lang, "forms": list(forms), "candidates": rows})
        return out

    @classmethod
    def from_list(cls, rows) -> "Lexicon":
        lex = cls()
        for row in rows:
            for lu, frame, n in row["candidates"]:
                if not isinstance(n, int) or n < 1:
                    raise ModelFormatError("lexicon counts must be positive integers")
                lex.add(row["language"], row["forms"], lu, frame, n)
        return lex


@dataclass
class LinearModel:
    frame_weights: dict[str, dict[str, float]] = field(default_factory=dict)
    role_weights: dict[str, dict[str, float]] = field(default_factory=dict)
    frame_labels: list[str] = field(default_factory=list)
    # roles observed per frame in training; decoding is limited to these
    frame_roles: dict[str, list[str]] = field(default_factory=dict)
    version: str = MODEL_VERSION
    feature_template: str = FEATURE_TEMPLATE

    def role_labels(self, frame: str) -> list[str]:
        roles = self.frame_roles.get(frame, [])
        return [OUTSIDE] + [f"{p}-{r}" for r in roles for p in ("B", "I")]


# --------------------------------------------------------------------------
# features


def _tok(tokens, i):
    if i < 0:
        return "<s>"
    if i >= len(tokens):
        return "</s>"
    return tokens[i].lower()


def frame_features(sentence: Sentence, target: Span) -> list[str]:
    toks = sentence.tokens
    form = " ".join(t.lower() for t in toks[target.start:target.end])
    lang = sentence.language
    return [
        "bias",
        f"tf={form}",
        f"lang={lang}",
        f"lang|tf={lang}|{form}",
        f"w-2={_tok(toks, target.start - 2)}",
        f"w-1={_tok(toks, target.start - 1)}",
        f"w+1={_tok(toks, target.end)}",
        f"w+2={_tok(toks, target.end + 1)}",
    ]


def _relative(i: int, target: Span) -> str:
    if i < target.start:
        return f"L{min(target.start - i, 6)}"
    if i >= target.end:
        return f"R{min(i - target.end + 1, 6)}"
    return "T"


def role_features(sentence: Sentence, target: Span, frame: str, i: int, prev: str) -> list[str]:
    toks = sentence.tokens
    w = _tok(toks, i)
    rel = _relative(i, target)
    return [
        "bias",
        f"w={w}",
        f"w-1={_tok(toks, i - 1)}",
        f"w+1={_tok(toks, i + 1)}",
        f"rel={rel}",
        f"prev={prev}",
        f"f|rel={frame}|{rel}",
        f"f|w={frame}|{w}",
        f"f|prev={frame}|{prev}",
        f"f|rel|prev={frame}|{rel}|{prev}",
        f"f|rel|w={frame}|{rel}|{w}",
    ]


def gold_role_tags(n_tokens: int, fills) -> list[str]:
    """BIO encoding of role fills; earlier (then longer) fills win overlapping tokens."""
    tags = [OUTSIDE] * n_tokens
    owner = [None] * n_tokens
    ordered = sorted(enumerate(fills), key=lambda x: (x[1].span.start, -len(x[1].span), x[1].role_name))
    for k, fill in ordered:
        for i in fill.span.tokens():
            if owner[i] is None:
                owner[i] = k
                starts = i == fill.span.start or owner[i - 1] != k
                tags[i] = f"{'B' if starts else 'I'}-{fill.role_name}"
    return tags


def repair(prev: str, label: str) -> str:
    """Rewrite ``I-x`` to ``B-x`` unless it continues a span of ``x``."""
    if label.startswith("I-") and prev not in (f"B-{label[2:]}", label):
        return "B-" + label[2:]
    return label


# --------------------------------------------------------------------------
# training


def build_lexicon(corpus: Corpus) -> Lexicon:
    lex = Lexicon()
    sentences = corpus.sentence_index
    for a in corpus.annotations:
        sent = sentences[a.sentence_id]
        lex.add(sent.language, sent.tokens[a.target.start:a.target.end], a.lu_id, a.frame_name)
    return lex


def _derive_seed(seed: int, epoch: int) -> SplitMix64:
    # one independent stream per epoch, reproducible from (seed, epoch)
    base = SplitMix64(seed)
    for _ in range(epoch + 1):
        s = base.next_u64()
    return SplitMix64(s)


def train(train_corpus: Corpus, epochs: int = 10, seed: int = 0) -> tuple[LinearModel, Lexicon]:
    """Fit the lexicon, frame classifier and role tagger on gold annotations.

    Items are visited in sorted sentence-id order (annotation order within a
    sentence), reshuffled with the seeded generator at every epoch. The role
    tagger conditions on the gold frame and gold previous tag while training.
    """
    if epochs < 1:
        raise ValueError("epochs must be positive")
    if train_corpus.kind is not CorpusKind.EXEMPLAR:
        raise ValueError("training expects an exemplar corpus")
    if not train_corpus.annotations:
        raise EmptyTrainingDataError("training corpus has no annotations")

    lexicon = build_lexicon(train_corpus)
    sentences = train_corpus.sentence_index
    by_sentence = train_corpus.annotations_by_sentence
    items = [(sentences[sid], a) for sid in sorted(by_sentence) for a in by_sentence[sid]]

    frame_labels = sorted({a.frame_name for _, a in items})
    frame_roles: dict[str, set] = {f: set() for f in frame_labels}
    for _, a in items:
        frame_roles[a.frame_name].update(r.role_name for r in a.role_fills)
    model = LinearModel(frame_labels=frame_labels,
                        frame_roles={f: sorted(r) for f, r in frame_roles.items()})

    frame_clf = AveragedPerceptron()
    role_clf = AveragedPerceptron()
    for epoch in range(epochs):
        order = shuffle(items, _derive_seed(seed, epoch))
        frame_errors = 0
        for sent, ann in order:
            feats = frame_features(sent, ann.target)
            guess = frame_clf.predict(feats, frame_labels)
            frame_errors += guess != ann.frame_name
            frame_clf.update(ann.frame_name, guess, feats)

            labels = model.role_labels(ann.frame_name)
            gold = gold_role_tags(len(sent), ann.role_fills)
            prev = OUTSIDE
            for i, truth in enumerate(gold):
                feats = role_features(sent, ann.target, ann.frame_name, i, prev)
                role_clf.update(truth, role_clf.predict(feats, labels), feats)
                prev = truth
        log.debug("epoch %d: %d/%d frame errors", epoch + 1, frame_errors, len(order))

    frame_clf.average()
    role_clf.average()
    model.frame_weights = frame_clf.weights
    model.role_weights = role_clf.weights
    return model, lexicon


# --------------------------------------------------------------------------
# prediction


def choose_frame(model: LinearModel, lexicon: Lexicon, sentence: Sentence, target: Span):
    """Return ``(frame, lu_id, confidence)`` among the frames the lexicon licenses.

    Ties on score go to the frame with the higher lexicon count, then to the
    lexicographically smaller name.
    """
    cands = lexicon.lookup(sentence.language, sentence.tokens[target.start:target.end])
    if not cands:
        return None
    frame_counts: dict[str, int] = {}
    for (_, frame), n in cands.items():
        frame_counts[frame] = frame_counts.get(frame, 0) + n
    frames = sorted(frame_counts)
    clf = AveragedPerceptron(model.frame_weights)
    scores = clf.scores(frame_features(sentence, target), frames)
    best = min(frames, key=lambda f: (-scores[f], -frame_counts[f], f))
    confidence = softmax(scores)[best]
    lus = [(n, lu) for (lu, frame), n in cands.items() if frame == best]
    lu_id = min(lus, key=lambda x: (-x[0], x[1] is not None, x[1] or ""))[1]
    return best, lu_id, confidence


def tag_roles(model: LinearModel, sentence: Sentence, target: Span, frame: str) -> list[RoleFill]:
    labels = model.role_labels(frame)
    clf = AveragedPerceptron(model.role_weights)
    tags, probs = [], []
    prev = OUTSIDE
    for i in range(len(sentence)):
        scores = clf.scores(role_features(sentence, target, frame, i, prev), labels)
        raw = min(labels, key=lambda lab: (-scores[lab], lab))
        probs.append(softmax(scores)[raw])
        label = repair(prev, raw)
        tags.append(label)
        prev = label

    fills = []
    start = None
    for i, tag in enumerate(tags + [OUTSIDE]):
        if start is not None and not tag.startswith("I-"):
            role = tags[start][2:]
            fills.append(RoleFill(role, Span(start, i), min(probs[start:i])))
            start = None
        if tag.startswith("B-"):
            start = i
    return fills


def predict(model: LinearModel, lexicon: Lexicon, sentence: Sentence,
            provenance: str = "baseline-v1") -> PredictionSet:
    anns = []
    for span in lexicon.match(sentence):
        chosen = choose_frame(model, lexicon, sentence, span)
        if chosen is None:
            continue
        frame, lu_id, conf = chosen
        anns.append(Annotation(
            sentence_id=sentence.id,
            target=span,
            frame_name=frame,
            role_fills=tuple(tag_roles(model, sentence, span, frame)),
            lu_id=lu_id,
            frame_confidence=conf,
        ))
    return PredictionSet(sentence.id, tuple(anns), provenance)


def predict_corpus(model, lexicon, corpus: Corpus, provenance: str = "baseline-v1") -> list[PredictionSet]:
    return [predict(model, lexicon, s, provenance) for s in corpus.sentences]


def frame_accuracy(model: LinearModel, lexicon: Lexicon, corpus: Corpus, licensed: bool = True) -> float:
    """Frame accuracy on gold targets.

    With ``licensed=False`` the classifier chooses among every frame it was
    trained on, without help from the lexicon.
    """
    if not corpus.annotations:
        return 0.0
    sentences = corpus.sentence_index
    clf = AveragedPerceptron(model.frame_weights)
    right = 0
    for a in corpus.annotations:
        sent = sentences[a.sentence_id]
        if licensed:
            chosen = choose_frame(model, lexicon, sent, a.target)
            guess = chosen[0] if chosen else None
        else:
            guess = clf.predict(frame_features(sent, a.target), model.frame_labels)
        right += guess == a.frame_name
    return right / len(corpus.annotations)


# --------------------------------------------------------------------------
# serialization


def model_to_json(model: LinearModel, lexicon: Lexicon) -> str:
    obj = {
        "version": model.version,
        "feature_template": model.feature_template,
        "frame_labels": model.frame_labels,
        "frame_roles": model.frame_roles,
        "frame_weights": model.frame_weights,
        "role_weights": model.role_weights,
        "lexicon": lexicon.to_list(),
    }
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


def save_model(model: LinearModel, lexicon: Lexicon, path) -> None:
    Path(path).write_text(model_to_json(model, lexicon), encoding="utf-8")


def model_from_json(text: str) -> tuple[LinearModel, Lexicon]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"model file is not valid JSON ({e.msg})") from None
    if not isinstance(obj, dict):
        raise ModelFormatError("model file must hold a JSON object")
    if obj.get("version") != MODEL_VERSION or obj.get("feature_template") != FEATURE_TEMPLATE:
        raise ModelVersionError(
            f"model version {obj.get('version')!r}/{obj.get('feature_template')!r} does not match "
            f"{MODEL_VERSION!r}/{FEATURE_TEMPLATE!r}"
        )
    try:
        model = LinearModel(
            frame_weights=obj["frame_weights"],
            role_weights=obj["role_weights"],
            frame_labels=list(obj["frame_labels"]),
            frame_roles={k: list(v) for k, v in obj["frame_roles"].items()},
        )
        lexicon = Lexicon.from_list(obj["lexicon"])
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"model file is incomplete: {e}") from None
    for table in (model.frame_weights, model.role_weights):
        for row in table.values():
            for w in row.values():
                if not isinstance(w, (int, float)) or w != w or w in (float("inf"), float("-inf")):
                    raise ModelFormatError("model weights must be finite numbers")
    return model, lexicon


def load_model(path) -> tuple[LinearModel, Lexicon]:
    return model_from_json(Path(path).read_text(encoding="utf-8"))
