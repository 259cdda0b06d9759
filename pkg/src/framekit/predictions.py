"""
Prediction interchange format
=============================

One JSON object per predicted annotation::

    {"sentence_id": "s1", "target": {"start": 2, "end": 3}, "frame": "Shot",
     "roles": [{"role": "Shooter", "start": 0, "end": 1, "confidence": 1.0}],
     "frame_confidence": 1.0, "provenance": "neural-simple"}

``lu_id`` is optional. A sentence that was processed but received no
prediction is recorded by a line whose ``target`` is ``null``; this keeps
empty prediction sets visible in the file. Any system that writes this format
can be scored; ``provenance`` is free text and is never interpreted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import Annotation, RoleFill, Span
from .errors import PredictionFormatError


@dataclass(frozen=True)
class PredictionSet:
    sentence_id: str
    annotations: tuple[Annotation, ...] = ()
    provenance: str = ""

    def __len__(self):
        return len(self.annotations)

    def __iter__(self):
        return iter(self.annotations)

    def replace(self, annotations) -> "PredictionSet":
        return PredictionSet(self.sentence_id, tuple(annotations), self.provenance)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def prediction_to_dict(a: Annotation, provenance: str) -> dict:
    obj = {
        "sentence_id": a.sentence_id,
        "target": {"start": a.target.start, "end": a.target.end},
        "frame": a.frame_name,
    }
    if a.lu_id is not None:
        obj["lu_id"] = a.lu_id
    obj["roles"] = [
        {"role": r.role_name, "start": r.span.start, "end": r.span.end, "confidence": r.confidence}
        for r in a.role_fills
    ]
    obj["frame_confidence"] = a.frame_confidence
    obj["provenance"] = provenance
    return obj


def prediction_lines(pred_sets: Iterable[PredictionSet]) -> list[str]:
    lines = []
    for ps in pred_sets:
        if not ps.annotations:
            lines.append(_dump({"sentence_id": ps.sentence_id, "target": None,
                                "provenance": ps.provenance}))
        for a in ps.annotations:
            lines.append(_dump(prediction_to_dict(a, ps.provenance)))
    return lines


def save_predictions(pred_sets: Iterable[PredictionSet], path) -> None:
    Path(path).write_text("".join(l + "\n" for l in prediction_lines(pred_sets)), encoding="utf-8")


def _annotation_from(obj) -> Annotation:
    roles = tuple(
        RoleFill(r["role"], Span(int(r["start"]), int(r["end"])), float(r.get("confidence", 1.0)))
        for r in obj.get("roles", [])
    )
    t = obj["target"]
    return Annotation(
        sentence_id=obj["sentence_id"],
        target=Span(int(t["start"]), int(t["end"])),
        frame_name=obj["frame"],
        role_fills=roles,
        lu_id=obj.get("lu_id"),
        frame_confidence=float(obj.get("frame_confidence", 1.0)),
    )


def parse_prediction_lines(lines: Iterable[str]) -> dict[str, PredictionSet]:
    """Group prediction lines by sentence, preserving first-seen order.

    If one sentence's lines carry different provenance strings, the first one
    is kept for the set.
    """
    anns: dict[str, list[Annotation]] = {}
    prov: dict[str, str] = {}
    for i, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
            sid = obj["sentence_id"]
            if not isinstance(sid, str):
                raise TypeError("sentence_id must be a string")
            anns.setdefault(sid, [])
            prov.setdefault(sid, str(obj.get("provenance", "")))
            if obj.get("target") is not None:
                anns[sid].append(_annotation_from(obj))
        except json.JSONDecodeError as e:
            raise PredictionFormatError(f"line {i}: malformed JSON ({e.msg})") from None
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise PredictionFormatError(f"line {i}: bad prediction record: {e}") from None
    return {sid: PredictionSet(sid, tuple(a), prov[sid]) for sid, a in anns.items()}


def load_predictions(path) -> dict[str, PredictionSet]:
    with open(path, encoding="utf-8") as fh:
        return parse_prediction_lines(fh)
