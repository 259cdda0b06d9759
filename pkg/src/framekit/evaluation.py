"""
Sequence-label scoring
======================

Gold and predicted annotations are both flattened to two per-token label
layers: the frame layer (``B-Shot``/``I-Shot`` on target tokens) and the role
layer (``B-Shot:Shooter``/``I-Shot:Shooter`` on role-fill tokens). Each token
then counts, per layer:

* a predicted non-O label equal to the gold label: true positive;
* a predicted non-O label differing from gold (including gold O): false positive;
* a gold non-O label differing from the prediction (including predicted O): false negative.

Counts are micro-aggregated over every sentence of the gold corpus.

Two modes are supported. ``RAW`` scores everything the system produced.
Exemplar corpora annotate only one or a few predicates per sentence, so RAW
precision is depressed by predictions on predicates nobody annotated.
``GOLD_PRED`` first drops predicted annotations whose target shares no token
with any gold target in the same sentence, giving a precision that is
interpretable for the predicates that were annotated. Both modes apply the
confidence filter first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .corpus import Annotation, Corpus, Sentence
from .errors import SpanOutOfBoundsError, UnknownSentenceError
from .predictions import PredictionSet

OUTSIDE = "O"


class Mode(str, Enum):
    RAW = "RAW"
    GOLD_PRED = "GOLD_PRED"

    @classmethod
    def parse(cls, text: str) -> list["Mode"]:
        """CLI spelling: ``raw``, ``gold-pred`` or ``both``."""
        text = text.lower().replace("_", "-")
        if text == "both":
            return [cls.RAW, cls.GOLD_PRED]
        if text == "raw":
            return [cls.RAW]
        if text == "gold-pred":
            return [cls.GOLD_PRED]
        raise ValueError(f"unknown mode {text!r}")


@dataclass(frozen=True)
class Collision:
    layer: str
    token: int
    kept: str
    dropped: str


@dataclass(frozen=True)
class LabelSequence:
    frames: tuple[str, ...]
    roles: tuple[str, ...]
    collisions: tuple[Collision, ...] = ()


# --------------------------------------------------------------------------
# confidence filtering and gold-predicate restriction


def filter_by_confidence(preds: PredictionSet, threshold: float) -> PredictionSet:
    """Keep annotations whose frame confidence reaches ``threshold``; within
    those, keep role fills whose own confidence reaches it."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    if threshold == 0.0:
        return preds
    kept = []
    for a in preds.annotations:
        if a.frame_confidence < threshold:
            continue
        fills = tuple(r for r in a.role_fills if r.confidence >= threshold)
        if len(fills) != len(a.role_fills):
            a = Annotation(a.sentence_id, a.target, a.frame_name, fills, a.lu_id, a.frame_confidence)
        kept.append(a)
    return preds.replace(kept)


def restrict_to_gold_predicates(preds: PredictionSet, gold: Sequence[Annotation]) -> PredictionSet:
    """Drop predicted annotations whose target overlaps no gold target of the sentence."""
    gold_targets = [g.target for g in gold if g.sentence_id == preds.sentence_id]
    kept = [a for a in preds.annotations if any(a.target.overlaps(t) for t in gold_targets)]
    return preds.replace(kept)


# --------------------------------------------------------------------------
# label sequences


def _layer(n: int, items: list, layer: str, collisions: list) -> list[str]:
    # items: (priority key, label, span); lower key wins contested tokens
    owner: list = [None] * n
    labels = [OUTSIDE] * n
    for k, (_, label, span) in enumerate(sorted(items, key=lambda x: x[0])):
        for i in span.tokens():
            if owner[i] is None:
                owner[i] = k
                begins = i == span.start or owner[i - 1] != k
                labels[i] = ("B-" if begins else "I-") + label
            else:
                collisions.append(Collision(layer, i, labels[i][2:], label))
    return labels


def to_label_sequence(sentence: Sentence, annotations: Iterable[Annotation]) -> LabelSequence:
    """Frame and role label layers for one sentence.

    A token claimed twice on one layer goes to the item with the smaller
    ``(frame, start)`` key (then end, role name, input order); the loss is
    recorded as a :class:`Collision`. Each item's surviving tokens start with
    ``B-`` wherever they do not continue that same item, so both layers stay
    BIO well-formed.
    """
    n = len(sentence)
    frame_items, role_items = [], []
    for idx, a in enumerate(annotations):
        for span in a.spans():
            if not span.fits(n):
                raise SpanOutOfBoundsError(
                    f"span [{span.start}, {span.end}) exceeds {n} tokens of sentence {sentence.id!r}",
                    sentence_id=sentence.id,
                )
        t = a.target
        frame_items.append(((a.frame_name, t.start, t.end, idx), a.frame_name, t))
        for j, r in enumerate(a.role_fills):
            s = r.span
            role_items.append(
                ((a.frame_name, s.start, s.end, r.role_name, idx, j), f"{a.frame_name}:{r.role_name}", s)
            )
    collisions: list[Collision] = []
    frames = _layer(n, frame_items, "frames", collisions)
    roles = _layer(n, role_items, "roles", collisions)
    return LabelSequence(tuple(frames), tuple(roles), tuple(collisions))


# --------------------------------------------------------------------------
# scores


@dataclass
class LayerScore:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def add(self, gold: Sequence[str], pred: Sequence[str]) -> None:
        for g, p in zip(gold, pred):
            if p != OUTSIDE:
                if p == g:
                    self.tp += 1
                else:
                    self.fp += 1
            if g != OUTSIDE and p != g:
                self.fn += 1

    def to_dict(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "fn": self.fn,
            "precision": round(self.precision, 4),
            "recall": round(self.recall, 4),
            "f1": round(self.f1, 4),
        }


@dataclass
class ScoreReport:
    mode: Mode
    threshold: float
    frames: LayerScore = field(default_factory=LayerScore)
    roles: LayerScore = field(default_factory=LayerScore)
    gold_collisions: int = 0
    pred_collisions: int = 0
    provenance: str = ""

    def layer(self, name: str) -> LayerScore:
        return {"frames": self.frames, "roles": self.roles}[name]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "threshold": self.threshold,
            "provenance": self.provenance,
            "frames": self.frames.to_dict(),
            "roles": self.roles.to_dict(),
            "diagnostics": {
                "gold_collisions": self.gold_collisions,
                "pred_collisions": self.pred_collisions,
            },
        }


def _as_set(sid, preds) -> PredictionSet:
    if preds is None:
        return PredictionSet(sid)
    if isinstance(preds, PredictionSet):
        return preds
    return PredictionSet(sid, tuple(preds))


def score(
    gold_corpus: Corpus,
    preds: Mapping[str, PredictionSet],
    mode: Mode = Mode.RAW,
    threshold: float = 1.0,
) -> ScoreReport:
    """Score predictions against every sentence of ``gold_corpus``.

    Sentences without an entry in ``preds`` count as having no predictions.
    """
    mode = Mode(mode)
    sentences = gold_corpus.sentence_index
    unknown = sorted(set(preds) - set(sentences))
    if unknown:
        raise UnknownSentenceError(f"predictions for unknown sentence(s): {unknown[:5]}")
    gold_by_sentence = gold_corpus.annotations_by_sentence
    provenances = sorted({p.provenance for p in preds.values()
                          if isinstance(p, PredictionSet) and p.provenance})

    report = ScoreReport(mode, threshold, provenance=",".join(provenances))
    for sent in gold_corpus.sentences:
        gold = gold_by_sentence.get(sent.id, [])
        ps = filter_by_confidence(_as_set(sent.id, preds.get(sent.id)), threshold)
        if mode is Mode.GOLD_PRED:
            ps = restrict_to_gold_predicates(ps, gold)
        g_seq = to_label_sequence(sent, gold)
        p_seq = to_label_sequence(sent, ps.annotations)
        report.frames.add(g_seq.frames, p_seq.frames)
        report.roles.add(g_seq.roles, p_seq.roles)
        report.gold_collisions += len(g_seq.collisions)
        report.pred_collisions += len(p_seq.collisions)
    return report


def score_modes(gold_corpus, preds, modes=(Mode.RAW, Mode.GOLD_PRED), threshold=1.0) -> dict:
    return {Mode(m): score(gold_corpus, preds, m, threshold) for m in modes}


# --------------------------------------------------------------------------
# report formatting


def format_table(rows: Sequence[tuple[str, Mapping[Mode, ScoreReport]]]) -> str:
    """Plain-text R/P/F grid: frames and roles, each split into RAW and GOLD_PRED."""
    name_w = max([len(name) for name, _ in rows] + [8])
    cell = 6
    group = 3 * (cell + 1)

    def pad(s, w):
        return s.ljust(w)

    head1 = pad("", name_w) + " " + pad("frames", 2 * group) + " " + "roles"
    head2 = pad("", name_w) + " " + " ".join(pad(m, group - 1) for m in ["RAW", "GOLD_PRED"] * 2)
    head3 = pad("", name_w) + " " + " ".join(pad(c, cell) for c in ["R", "P", "F"] * 4)
    lines = [head1.rstrip(), head2.rstrip(), head3.rstrip()]
    for name, reports in rows:
        cells = []
        for layer in ("frames", "roles"):
            for mode in (Mode.RAW, Mode.GOLD_PRED):
                rep = reports.get(mode)
                if rep is None:
                    cells += ["-".ljust(cell)] * 3
                    continue
                s = rep.layer(layer)
                cells += [f"{v:.4f}" for v in (s.recall, s.precision, s.f1)]
        lines.append(pad(name, name_w) + " " + " ".join(cells))
    return "\n".join(lines)


def reports_to_json(reports: Mapping[Mode, ScoreReport]) -> str:
    obj = {"threshold": None, "reports": []}
    for mode in (Mode.RAW, Mode.GOLD_PRED):
        if mode in reports:
            obj["threshold"] = reports[mode].threshold
            obj["reports"].append(reports[mode].to_dict())
    return json.dumps(obj, indent=2)
