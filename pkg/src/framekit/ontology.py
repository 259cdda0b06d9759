"""Consistency checks of annotations against the scene/frame/LU ontology."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .corpus import Annotation, Corpus, Sentence
from .errors import UnknownSentenceError


class ViolationKind(str, Enum):
    UNKNOWN_FRAME = "unknown_frame"
    ROLE_NOT_IN_FRAME = "role_not_in_frame"
    LU_FRAME_MISMATCH = "lu_frame_mismatch"
    DUPLICATE_CORE_ROLE = "duplicate_core_role"
    SPAN_OVERFLOW = "span_overflow"


# repeated role fills are plausible for some frames, so they only warn by default
DEFAULT_SEVERITY = {
    ViolationKind.UNKNOWN_FRAME: "error",
    ViolationKind.ROLE_NOT_IN_FRAME: "error",
    ViolationKind.LU_FRAME_MISMATCH: "error",
    ViolationKind.DUPLICATE_CORE_ROLE: "warning",
    ViolationKind.SPAN_OVERFLOW: "error",
}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    sentence_id: str
    annotation_index: int
    detail: str
    severity: str = "error"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "sentence_id": self.sentence_id,
            "annotation_index": self.annotation_index,
            "severity": self.severity,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))


def validate(
    ontology: Corpus,
    annotations: Sequence[Annotation],
    sentences: Mapping[str, Sentence],
    severity: Mapping[ViolationKind, str] | None = None,
) -> list[Violation]:
    """Check each annotation against the ontology held by ``ontology``.

    ``annotation_index`` is the position in ``annotations``. An annotation
    whose frame is unknown is not checked for role membership. When the LU is
    defined for several frames (or languages), the annotation is accepted if
    any definition for the sentence's language names its frame; an LU id with
    no definition at all is reported as a mismatch.

    Raises :class:`UnknownSentenceError` if an annotation names a sentence
    not in ``sentences``; content problems never raise.
    """
    severity = {**DEFAULT_SEVERITY, **(severity or {})}
    frames = ontology.frame_index
    lus = ontology.lu_index
    out: list[Violation] = []

    def flag(kind, sid, idx, detail):
        out.append(Violation(kind, sid, idx, detail, severity[kind]))

    for idx, ann in enumerate(annotations):
        sent = sentences.get(ann.sentence_id)
        if sent is None:
            raise UnknownSentenceError(f"annotation {idx} names unknown sentence {ann.sentence_id!r}")
        sid = ann.sentence_id

        for span in ann.spans():
            if not span.fits(len(sent)):
                flag(ViolationKind.SPAN_OVERFLOW, sid, idx,
                     f"span [{span.start}, {span.end}) exceeds {len(sent)} tokens")

        frame = frames.get(ann.frame_name)
        if frame is None:
            flag(ViolationKind.UNKNOWN_FRAME, sid, idx, f"frame {ann.frame_name!r} is not defined")
        else:
            for fill in ann.role_fills:
                if fill.role_name not in frame.role_names:
                    flag(ViolationKind.ROLE_NOT_IN_FRAME, sid, idx,
                         f"role {fill.role_name!r} is not a role of frame {frame.name!r}")

        if ann.lu_id is not None:
            defs = lus.get(ann.lu_id, [])
            same_lang = [d for d in defs if d.language == sent.language]
            candidates = same_lang or defs
            if not candidates:
                flag(ViolationKind.LU_FRAME_MISMATCH, sid, idx,
                     f"lexical unit {ann.lu_id!r} is not defined")
            elif all(d.frame_name != ann.frame_name for d in candidates):
                evoked = sorted({d.frame_name for d in candidates})
                flag(ViolationKind.LU_FRAME_MISMATCH, sid, idx,
                     f"lexical unit {ann.lu_id!r} evokes {evoked}, not {ann.frame_name!r}")

        counts = Counter(f.role_name for f in ann.role_fills)
        for role, n in sorted(counts.items()):
            if n > 1:
                flag(ViolationKind.DUPLICATE_CORE_ROLE, sid, idx, f"role {role!r} filled {n} times")
    return out


def consistency_rate(violations: Sequence[Violation], annotations: Sequence[Annotation]) -> float:
    """Fraction of annotations with no violation (1.0 for an empty list)."""
    if not annotations:
        return 1.0
    bad = {v.annotation_index for v in violations}
    return (len(annotations) - len(bad)) / len(annotations)
