"""
Corpus data model
=================

Scenes group frames, frames own a role inventory, lexical units evoke frames,
and annotations tie a target span in a tokenized sentence to a frame and its
role fills. Everything here is immutable once loaded.

The on-disk format is JSONL, one object per line with a ``"type"`` field. See
``docs/formats.md`` for the exact layout.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional

from .errors import (
    CorpusFormatError,
    DanglingReferenceError,
    SpanOutOfBoundsError,
)

LU_ID_RE = re.compile(r"^(?P<lemma>.+)\.(?P<pos>v|n|a|adv|idiom)$")
LANGUAGE_RE = re.compile(r"^[A-Za-z]{2}$")


class CorpusKind(str, Enum):
    EXEMPLAR = "exemplar"
    FULLTEXT = "fulltext"


@dataclass(frozen=True, order=True)
class Span:
    """Half-open token interval ``[start, end)``."""

    start: int
    end: int

    def __post_init__(self):
        if not (isinstance(self.start, int) and isinstance(self.end, int)):
            raise TypeError("span bounds must be integers")
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start

    def tokens(self) -> range:
        return range(self.start, self.end)

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def fits(self, n_tokens: int) -> bool:
        return self.end <= n_tokens


@dataclass(frozen=True)
class Scene:
    name: str
    frame_names: tuple[str, ...]

    def __post_init__(self):
        if not self.name:
            raise ValueError("scene name must be non-empty")
        if not self.frame_names:
            raise ValueError(f"scene {self.name!r} has no frames")
        if len(set(self.frame_names)) != len(self.frame_names):
            raise ValueError(f"scene {self.name!r} lists a frame twice")


@dataclass(frozen=True)
class FrameDef:
    name: str
    scene_name: str
    role_names: frozenset[str]

    def __post_init__(self):
        if not self.name:
            raise ValueError("frame name must be non-empty")
        if not self.role_names:
            raise ValueError(f"frame {self.name!r} has no roles")


@dataclass(frozen=True)
class LexicalUnitDef:
    id: str
    language: str
    frame_name: str

    def __post_init__(self):
        if not LU_ID_RE.match(self.id):
            raise ValueError(f"lexical unit id {self.id!r} is not of the form lemma.pos")
        if not LANGUAGE_RE.match(self.language):
            raise ValueError(f"bad language code {self.language!r}")

    @property
    def key(self) -> str:
        return f"{self.id}({self.language})"


@dataclass(frozen=True)
class Sentence:
    id: str
    language: str
    tokens: tuple[str, ...]
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("sentence id must be non-empty")
        if not LANGUAGE_RE.match(self.language):
            raise ValueError(f"bad language code {self.language!r}")
        if not self.tokens or any(not t for t in self.tokens):
            raise ValueError(f"sentence {self.id!r} has an empty token list or empty token")

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class RoleFill:
    role_name: str
    span: Span
    confidence: float = 1.0


@dataclass(frozen=True)
class Annotation:
    """One predicate instance.

    ``frame_confidence`` scores the target-frame item; each role fill carries
    its own confidence. Gold annotations use 1.0 throughout.
    """

    sentence_id: str
    target: Span
    frame_name: str
    role_fills: tuple[RoleFill, ...] = ()
    lu_id: Optional[str] = None
    frame_confidence: float = 1.0

    def __post_init__(self):
        for c in [self.frame_confidence] + [r.confidence for r in self.role_fills]:
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"confidence {c} outside [0, 1]")

    def spans(self) -> list[Span]:
        return [self.target] + [r.span for r in self.role_fills]


@dataclass(frozen=True)
class Corpus:
    scenes: tuple[Scene, ...] = ()
    frames: tuple[FrameDef, ...] = ()
    lexical_units: tuple[LexicalUnitDef, ...] = ()
    sentences: tuple[Sentence, ...] = ()
    annotations: tuple[Annotation, ...] = ()
    kind: CorpusKind = CorpusKind.EXEMPLAR
    # ontology violations found at load time (see framekit.ontology)
    flags: tuple = field(default=(), compare=False)

    @cached_property
    def frame_index(self) -> dict[str, FrameDef]:
        return {f.name: f for f in self.frames}

    @cached_property
    def sentence_index(self) -> dict[str, Sentence]:
        return {s.id: s for s in self.sentences}

    @cached_property
    def lu_index(self) -> dict[str, list[LexicalUnitDef]]:
        out: dict[str, list[LexicalUnitDef]] = {}
        for lu in self.lexical_units:
            out.setdefault(lu.id, []).append(lu)
        return out

    @cached_property
    def annotations_by_sentence(self) -> dict[str, list[Annotation]]:
        out: dict[str, list[Annotation]] = {s.id: [] for s in self.sentences}
        for a in self.annotations:
            out.setdefault(a.sentence_id, []).append(a)
        return out

    def with_content(self, sentences, annotations) -> "Corpus":
        """Same ontology, different sentences and annotations."""
        return Corpus(
            scenes=self.scenes,
            frames=self.frames,
            lexical_units=self.lexical_units,
            sentences=tuple(sentences),
            annotations=tuple(annotations),
            kind=self.kind,
        )


@dataclass(frozen=True)
class StatsReport:
    total_annotations: int
    unique_sentences: int
    annotations_per_sentence: float
    by_language: dict[str, int]
    top_by_frame: list[tuple[str, int]]
    top_by_lu: list[tuple[str, int]]
    frame_count_with_exemplars: int

    def to_dict(self) -> dict:
        return {
            "total_annotations": self.total_annotations,
            "unique_sentences": self.unique_sentences,
            "annotations_per_sentence": self.annotations_per_sentence,
            "by_language": dict(self.by_language),
            "top_by_frame": [[n, c] for n, c in self.top_by_frame],
            "top_by_lu": [[n, c] for n, c in self.top_by_lu],
            "frame_count_with_exemplars": self.frame_count_with_exemplars,
        }

    def format_table(self) -> str:
        lines = [
            f"total annotations       {self.total_annotations}",
            f"unique sentences        {self.unique_sentences}",
            f"annotations / sentence  {self.annotations_per_sentence:.4f}",
            f"frames with exemplars   {self.frame_count_with_exemplars}",
            "",
        ]
        cols = [
            ("by language", sorted(self.by_language.items())),
            ("by frame", self.top_by_frame),
            ("by LU", self.top_by_lu),
        ]
        widths = [max([len(h)] + [len(n) + 8 for n, _ in rows]) for h, rows in cols]
        lines.append("  ".join(h.ljust(w) for (h, _), w in zip(cols, widths)))
        depth = max(len(rows) for _, rows in cols)
        for i in range(depth):
            cells = []
            for (_, rows), w in zip(cols, widths):
                if i < len(rows):
                    name, count = rows[i]
                    cells.append(f"{name.ljust(w - 7)}{count:>7}")
                else:
                    cells.append(" " * w)
            lines.append("  ".join(cells).rstrip())
        return "\n".join(lines)


# --------------------------------------------------------------------------
# JSONL reading and writing


def _span_from(obj, what, line_number) -> Span:
    try:
        return Span(int(obj["start"]), int(obj["end"]))
    except (KeyError, TypeError, ValueError) as e:
        raise CorpusFormatError(f"bad {what} span {obj!r}: {e}", line_number) from None


def _annotation_from(obj, line_number) -> Annotation:
    fills = []
    for r in obj.get("role_fills", []):
        fills.append(
            RoleFill(
                role_name=r["role_name"],
                span=_span_from(r, "role", line_number),
                confidence=float(r.get("confidence", 1.0)),
            )
        )
    return Annotation(
        sentence_id=obj["sentence_id"],
        target=_span_from(obj["target"], "target", line_number),
        frame_name=obj["frame_name"],
        role_fills=tuple(fills),
        lu_id=obj.get("lu_id"),
        frame_confidence=float(obj.get("frame_confidence", 1.0)),
    )


def parse_corpus_lines(lines: Iterable[str]) -> Corpus:
    """Build a :class:`Corpus` from JSONL lines; see :func:`load_corpus`."""
    from .ontology import validate

    kind = CorpusKind.EXEMPLAR
    scenes, frames, lus, sentences, annotations = [], [], [], [], []
    ann_lines = []
    for i, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(f"malformed JSON ({e.msg})", i) from None
        if not isinstance(obj, dict):
            raise CorpusFormatError("expected a JSON object", i)
        t = obj.get("type")
        try:
            if t == "corpus":
                kind = CorpusKind(obj["kind"])
            elif t == "scene":
                scenes.append(Scene(obj["name"], tuple(obj["frame_names"])))
            elif t == "frame":
                frames.append(FrameDef(obj["name"], obj["scene_name"], frozenset(obj["role_names"])))
            elif t == "lu":
                lus.append(LexicalUnitDef(obj["id"], obj["language"], obj["frame_name"]))
            elif t == "sentence":
                sentences.append(
                    Sentence(obj["id"], obj["language"], tuple(obj["tokens"]), obj.get("text", ""))
                )
            elif t == "annotation":
                annotations.append(_annotation_from(obj, i))
                ann_lines.append(i)
            else:
                raise CorpusFormatError(f"unknown record type {t!r}", i)
        except CorpusFormatError:
            raise
        except KeyError as e:
            raise CorpusFormatError(f"{t} record is missing field {e}", i) from None
        except (TypeError, ValueError) as e:
            raise CorpusFormatError(f"bad {t} record: {e}", i) from None

    corpus = Corpus(
        scenes=tuple(scenes),
        frames=tuple(frames),
        lexical_units=tuple(lus),
        sentences=tuple(sentences),
        annotations=tuple(annotations),
        kind=kind,
    )
    _check_references(corpus, ann_lines)
    flags = [v for v in validate(corpus, corpus.annotations, corpus.sentence_index)]
    return Corpus(
        scenes=corpus.scenes,
        frames=corpus.frames,
        lexical_units=corpus.lexical_units,
        sentences=corpus.sentences,
        annotations=corpus.annotations,
        kind=corpus.kind,
        flags=tuple(flags),
    )


def _check_references(corpus: Corpus, ann_lines) -> None:
    def unique(items, what):
        seen = set()
        for x in items:
            if x in seen:
                raise CorpusFormatError(f"duplicate {what} {x!r}")
            seen.add(x)

    unique([s.name for s in corpus.scenes], "scene")
    unique([f.name for f in corpus.frames], "frame")
    unique([(lu.id, lu.language) for lu in corpus.lexical_units], "lexical unit")
    unique([s.id for s in corpus.sentences], "sentence id")

    scene_index = {s.name: s for s in corpus.scenes}
    for scene in corpus.scenes:
        for name in scene.frame_names:
            if name not in corpus.frame_index:
                raise DanglingReferenceError(f"scene {scene.name!r} lists unknown frame {name!r}")
    for frame in corpus.frames:
        scene = scene_index.get(frame.scene_name)
        if scene is None:
            raise DanglingReferenceError(f"frame {frame.name!r} names unknown scene {frame.scene_name!r}")
        if frame.name not in scene.frame_names:
            raise DanglingReferenceError(
                f"frame {frame.name!r} is not listed by its scene {frame.scene_name!r}"
            )
    for lu in corpus.lexical_units:
        if lu.frame_name not in corpus.frame_index:
            raise DanglingReferenceError(f"lexical unit {lu.key} names unknown frame {lu.frame_name!r}")

    sentences = corpus.sentence_index
    for ann, line in zip(corpus.annotations, ann_lines):
        sent = sentences.get(ann.sentence_id)
        if sent is None:
            raise DanglingReferenceError(f"annotation names unknown sentence {ann.sentence_id!r}", line)
        for span in ann.spans():
            if not span.fits(len(sent)):
                raise SpanOutOfBoundsError(
                    f"span [{span.start}, {span.end}) exceeds {len(sent)} tokens "
                    f"of sentence {sent.id!r}",
                    sentence_id=sent.id,
                    line_number=line,
                )
    if corpus.kind is CorpusKind.EXEMPLAR:
        for sid, anns in corpus.annotations_by_sentence.items():
            if not anns:
                raise CorpusFormatError(f"exemplar sentence {sid!r} has no annotation")


def load_corpus(path, format: str = "jsonl") -> Corpus:
    """Read a corpus file.

    Structural problems (bad JSON, dangling references, spans past the end of
    a sentence) raise. Ontology problems inside annotations, such as a role the
    frame does not define, are kept and reported in ``corpus.flags``.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported corpus format {format!r}")
    with open(path, encoding="utf-8") as fh:
        return parse_corpus_lines(fh)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def annotation_to_dict(a: Annotation) -> dict:
    obj = {
        "type": "annotation",
        "sentence_id": a.sentence_id,
        "target": {"start": a.target.start, "end": a.target.end},
        "frame_name": a.frame_name,
    }
    if a.lu_id is not None:
        obj["lu_id"] = a.lu_id
    obj["role_fills"] = [
        {"role_name": r.role_name, "start": r.span.start, "end": r.span.end, "confidence": r.confidence}
        for r in a.role_fills
    ]
    obj["frame_confidence"] = a.frame_confidence
    return obj


def corpus_lines(corpus: Corpus) -> list[str]:
    lines = [_dump({"type": "corpus", "kind": corpus.kind.value})]
    for s in corpus.scenes:
        lines.append(_dump({"type": "scene", "name": s.name, "frame_names": list(s.frame_names)}))
    for f in corpus.frames:
        lines.append(
            _dump({"type": "frame", "name": f.name, "scene_name": f.scene_name,
                   "role_names": sorted(f.role_names)})
        )
    for lu in corpus.lexical_units:
        lines.append(_dump({"type": "lu", "id": lu.id, "language": lu.language,
                            "frame_name": lu.frame_name}))
    for s in corpus.sentences:
        lines.append(_dump({"type": "sentence", "id": s.id, "language": s.language,
                            "tokens": list(s.tokens), "text": s.text}))
    for a in corpus.annotations:
        lines.append(_dump(annotation_to_dict(a)))
    return lines


def save_corpus(corpus: Corpus, path) -> None:
    """Write the canonical JSONL form: header, scenes, frames, LUs, sentences, annotations."""
    Path(path).write_text("".join(line + "\n" for line in corpus_lines(corpus)), encoding="utf-8")


# --------------------------------------------------------------------------
# statistics


def _top(counter: Counter, k: int) -> list[tuple[str, int]]:
    return sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:k]


def count_frames_with_exemplars(corpus: Corpus) -> int:
    return len({a.frame_name for a in corpus.annotations})


def corpus_stats(corpus: Corpus, top_k: int = 5, merge_lu_languages: bool = False) -> StatsReport:
    """Descriptive counts over annotations.

    LU rows are keyed ``lemma.pos(LANG)``. With ``merge_lu_languages`` the same
    id across languages becomes one row, e.g. ``corner.n(EN/FR)`` with the
    summed count. Annotations without an ``lu_id`` do not enter the LU table.
    """
    if top_k < 1:
        raise ValueError("top_k must be positive")
    sentences = corpus.sentence_index
    by_language: Counter = Counter()
    by_frame: Counter = Counter()
    lu_counts: Counter = Counter()
    for a in corpus.annotations:
        lang = sentences[a.sentence_id].language
        by_language[lang] += 1
        by_frame[a.frame_name] += 1
        if a.lu_id is not None:
            lu_counts[(a.lu_id, lang)] += 1

    if merge_lu_languages:
        merged: dict[str, list] = {}
        for (lu_id, lang), n in lu_counts.items():
            entry = merged.setdefault(lu_id, [set(), 0])
            entry[0].add(lang)
            entry[1] += n
        by_lu = Counter({f"{i}({'/'.join(sorted(langs))})": n for i, (langs, n) in merged.items()})
    else:
        by_lu = Counter({f"{i}({lang})": n for (i, lang), n in lu_counts.items()})

    total = len(corpus.annotations)
    n_sent = len(corpus.sentences)
    return StatsReport(
        total_annotations=total,
        unique_sentences=n_sent,
        annotations_per_sentence=total / n_sent if n_sent else 0.0,
        by_language=dict(sorted(by_language.items())),
        top_by_frame=_top(by_frame, top_k),
        top_by_lu=_top(by_lu, top_k),
        frame_count_with_exemplars=count_frames_with_exemplars(corpus),
    )
