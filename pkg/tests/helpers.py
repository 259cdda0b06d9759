"""Independent brute-force scorer and random miniature gold/prediction pairs.

The oracle shares no code with framekit.evaluation: it works on sets of
(token, label) pairs and resolves every token on its own.
"""

import random

from framekit.corpus import Annotation, Corpus, CorpusKind, FrameDef, RoleFill, Scene, Sentence, Span
from framekit.predictions import PredictionSet

FRAMES = {"Goal": ["Scorer", "Team"], "Pass": ["Passer", "Receiver"], "Shot": ["Ball", "Shooter"]}


def _owner(i, items):
    """Winning item for token i: smallest priority key among items covering i."""
    covering = [it for it in items if it["start"] <= i < it["end"]]
    return min(covering, key=lambda it: it["key"]) if covering else None


def _pairs(n, items):
    pairs = set()
    for i in range(n):
        win = _owner(i, items)
        if win is None:
            continue
        prev = _owner(i - 1, items) if i > 0 else None
        prefix = "B" if i == win["start"] or prev is not win else "I"
        pairs.add((i, f"{prefix}-{win['label']}"))
    return pairs


def _items(annotations):
    frames, roles = [], []
    for idx, a in enumerate(annotations):
        frames.append({"key": (a.frame_name, a.target.start, a.target.end, idx),
                       "label": a.frame_name, "start": a.target.start, "end": a.target.end})
        for j, r in enumerate(a.role_fills):
            roles.append({"key": (a.frame_name, r.span.start, r.span.end, r.role_name, idx, j),
                          "label": f"{a.frame_name}:{r.role_name}",
                          "start": r.span.start, "end": r.span.end})
    return frames, roles


def oracle_score(gold_corpus, preds, gold_pred: bool, threshold: float):
    """Return {layer: (tp, fp, fn)} by set algebra over (token, label) pairs."""
    counts = {"frames": [0, 0, 0], "roles": [0, 0, 0]}
    for sent in gold_corpus.sentences:
        gold = [a for a in gold_corpus.annotations if a.sentence_id == sent.id]
        ps = preds.get(sent.id)
        pred = list(ps.annotations) if ps is not None else []
        kept = []
        for a in pred:
            if threshold > 0 and a.frame_confidence < threshold:
                continue
            fills = [r for r in a.role_fills if threshold == 0 or r.confidence >= threshold]
            kept.append(Annotation(a.sentence_id, a.target, a.frame_name, tuple(fills), a.lu_id))
        if gold_pred:
            gold_tokens = {i for g in gold for i in range(g.target.start, g.target.end)}
            kept = [a for a in kept if gold_tokens & set(range(a.target.start, a.target.end))]
        n = len(sent.tokens)
        for layer, g_items, p_items in zip(("frames", "roles"), _items(gold), _items(kept)):
            G, P = _pairs(n, g_items), _pairs(n, p_items)
            counts[layer][0] += len(P & G)
            counts[layer][1] += len(P - G)
            counts[layer][2] += len(G - P)
    return {k: tuple(v) for k, v in counts.items()}


def prf(tp, fp, fn):
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


# --------------------------------------------------------------------------
# random pairs


def _span(rng, n, free=None):
    for _ in range(20):
        start = rng.randrange(n)
        end = min(n, start + rng.choice([1, 1, 1, 2, 3]))
        if free is None or all(i in free for i in range(start, end)):
            return Span(start, end)
    return None


def _claim(free, span):
    for i in span.tokens():
        free.discard(i)


def random_pair(seed: int, collisions: bool = True):
    """A random gold corpus (<= 10 sentences, <= 15 tokens) and predictions for it.

    With ``collisions=False`` no two predicted items in a sentence claim the
    same token on the same layer (gold may still collide).
    """
    rng = random.Random(seed)
    frame_names = sorted(FRAMES)
    sentences, gold, preds = [], [], {}
    for s in range(rng.randint(1, 10)):
        sid = f"r{s}"
        n = rng.randint(1, 15)
        sentences.append(Sentence(sid, "EN", tuple(f"w{i}" for i in range(n)), ""))

        sent_gold = []
        for _ in range(rng.randint(1, 3)):
            frame = rng.choice(frame_names)
            fills = []
            # the first gold annotation always has a role, so no layer is empty
            for _ in range(rng.randint(1 if not gold and not sent_gold else 0, 2)):
                fills.append(RoleFill(rng.choice(FRAMES[frame]), _span(rng, n)))
            sent_gold.append(Annotation(sid, _span(rng, n), frame, tuple(fills)))
        gold += sent_gold

        frame_free, role_free = set(range(n)), set(range(n))
        sent_pred = []
        candidates = list(sent_gold) + [None] * rng.randint(0, 3)
        rng.shuffle(candidates)
        for base in candidates:
            if base is not None and rng.random() < 0.6:
                frame, target = base.frame_name, base.target
                if rng.random() < 0.2:
                    frame = rng.choice(frame_names)
                fills = [(r.role_name, r.span) for r in base.role_fills]
            else:
                frame = rng.choice(frame_names)
                target = _span(rng, n)
                fills = [(rng.choice(FRAMES[frame]), _span(rng, n)) for _ in range(rng.randint(0, 2))]
            if not collisions:
                if not all(i in frame_free for i in target.tokens()):
                    continue
                _claim(frame_free, target)
                kept = []
                for role, span in fills:
                    if all(i in role_free for i in span.tokens()):
                        _claim(role_free, span)
                        kept.append((role, span))
                fills = kept
            conf = lambda: rng.choice([1.0, 1.0, 0.95, 0.7, 0.3])  # noqa: E731
            sent_pred.append(Annotation(
                sid, target, frame,
                tuple(RoleFill(r, sp, conf()) for r, sp in fills),
                frame_confidence=conf(),
            ))
        if sent_pred or rng.random() < 0.5:
            preds[sid] = PredictionSet(sid, tuple(sent_pred), "random")

    ontology = dict(
        scenes=(Scene("All", tuple(frame_names)),),
        frames=tuple(FrameDef(f, "All", frozenset(r)) for f, r in FRAMES.items()),
    )
    corpus = Corpus(sentences=tuple(sentences), annotations=tuple(gold), kind=CorpusKind.EXEMPLAR, **ontology)
    return corpus, preds


def gold_as_predictions(corpus):
    out = {}
    for s in corpus.sentences:
        anns = tuple(a for a in corpus.annotations if a.sentence_id == s.id)
        out[s.id] = PredictionSet(s.id, anns, "gold")
    return out
