"""Small deterministic football corpus from a template grammar.

Every target form evokes exactly one frame and every role sits at a fixed
position relative to its target, so a linear model can fit it perfectly.
``gap_rate`` appends an unannotated second clause to some sentences, which
mimics the annotation gaps of exemplar corpora.
"""

from __future__ import annotations

import re

from .corpus import (
    Annotation,
    Corpus,
    CorpusKind,
    FrameDef,
    LexicalUnitDef,
    RoleFill,
    Scene,
    Sentence,
    Span,
)
from .rng import SplitMix64

SCENES = {
    "Attack": ["Shot", "Pass", "Goal"],
    "Defence": ["Save", "Foul"],
}

ROLES = {
    "Shot": ["Shooter", "Ball"],
    "Pass": ["Passer", "Receiver"],
    "Goal": ["Scorer", "Opponent"],
    "Save": ["Goalkeeper", "Shot"],
    "Foul": ["Offender", "Victim"],
}

# (frame, lu_id, template); {X} slots are role fills, * is the target
TEMPLATES = {
    "EN": [
        ("Shot", "shoot.v", "{Shooter} *shoots {Ball:the ball}"),
        ("Pass", "pass.v", "{Passer} *passes to {Receiver}"),
        ("Goal", "score.v", "{Scorer} *scores against {Opponent}"),
        ("Save", "save.v", "{Goalkeeper} *saves {Shot:the shot}"),
        ("Foul", "foul.v", "{Offender} *fouls {Victim}"),
    ],
    "DE": [
        ("Shot", "schießen.v", "{Shooter} *schießt {Ball:den Ball}"),
        ("Pass", "passen.v", "{Passer} *passt zu {Receiver}"),
        ("Goal", "treffen.v", "{Scorer} *trifft gegen {Opponent}"),
        ("Save", "halten.v", "{Goalkeeper} *hält {Shot:den Schuss}"),
        ("Foul", "foulen.v", "{Offender} *foult {Victim}"),
    ],
    "FR": [
        ("Shot", "tirer.v", "{Shooter} *tire {Ball:le ballon}"),
        ("Pass", "passer.v", "{Passer} *passe à {Receiver}"),
        ("Goal", "marquer.v", "{Scorer} *marque contre {Opponent}"),
        ("Save", "arrêter.v", "{Goalkeeper} *arrête {Shot:le tir}"),
        ("Foul", "bousculer.v", "{Offender} *bouscule {Victim}"),
    ],
}

PLAYERS = ["Messi", "Kane", "Thomas Müller", "Mbappé", "Kevin De Bruyne", "Neuer", "Lloris", "Salah"]
TEAMS = ["Ajax", "Real Madrid", "Bayern", "Paris Saint-Germain"]
TAILS = {"EN": ["", "again", "today"], "DE": ["", "erneut", "heute"], "FR": ["", "encore", "aujourd'hui"]}
CONJ = {"EN": "and", "DE": "und", "FR": "et"}


def _fill(slot: str, frame: str, rng: SplitMix64) -> list[str]:
    if ":" in slot:
        return slot.split(":", 1)[1].split()
    pool = TEAMS if slot == "Opponent" else PLAYERS
    return pool[rng.below(len(pool))].split()


def _clause(lang: str, idx: int, rng: SplitMix64, offset: int):
    frame, lu_id, template = TEMPLATES[lang][idx]
    tokens, fills, target = [], [], None
    for piece in re.findall(r"\{[^}]*\}|\S+", template):
        if piece.startswith("{"):
            slot = piece[1:-1]
            role = slot.split(":")[0]
            words = _fill(slot, frame, rng)
            start = offset + len(tokens)
            tokens += words
            fills.append(RoleFill(role, Span(start, start + len(words))))
        elif piece.startswith("*"):
            target = Span(offset + len(tokens), offset + len(tokens) + 1)
            tokens.append(piece[1:])
        else:
            tokens.append(piece)
    return frame, lu_id, tokens, target, fills


def ontology() -> dict:
    scenes = tuple(Scene(name, tuple(frames)) for name, frames in SCENES.items())
    scene_of = {f: s for s, frames in SCENES.items() for f in frames}
    frames = tuple(FrameDef(f, scene_of[f], frozenset(r)) for f, r in ROLES.items())
    lus = tuple(
        LexicalUnitDef(lu, lang, frame)
        for lang, rows in TEMPLATES.items()
        for frame, lu, _ in rows
    )
    return {"scenes": scenes, "frames": frames, "lexical_units": lus}


def synthetic_corpus(n_sentences: int = 200, seed: int = 0, gap_rate: float = 0.0) -> Corpus:
    rng = SplitMix64(seed)
    langs = sorted(TEMPLATES)
    sentences, annotations = [], []
    for i in range(n_sentences):
        lang = langs[rng.below(len(langs))]
        idx = rng.below(len(TEMPLATES[lang]))
        frame, lu_id, tokens, target, fills = _clause(lang, idx, rng, 0)
        tail = TAILS[lang][rng.below(len(TAILS[lang]))]
        if tail:
            tokens.append(tail)
        if rng.below(1000) < gap_rate * 1000:
            tokens += [",", CONJ[lang]]
            other = (idx + 1 + rng.below(len(TEMPLATES[lang]) - 1)) % len(TEMPLATES[lang])
            tokens += _clause(lang, other, rng, len(tokens))[2]
        tokens.append(".")
        sid = f"syn-{i:04d}"
        sentences.append(Sentence(sid, lang, tuple(tokens), " ".join(tokens)))
        annotations.append(Annotation(sid, target, frame, tuple(fills), lu_id))
    return Corpus(sentences=tuple(sentences), annotations=tuple(annotations),
                  kind=CorpusKind.EXEMPLAR, **ontology())
