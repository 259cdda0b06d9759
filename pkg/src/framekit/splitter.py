"""Seeded train/dev/test partitioning at the sentence level.

Sentence ids are sorted, shuffled with :func:`framekit.rng.shuffle`, and cut
into consecutive blocks of train, dev and test. Block sizes come from
largest-remainder apportionment; leftover seats go to the largest fractional
parts, ties resolved train before test before dev. Frame and LU labels are
ignored, so any frame may land in any partition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .corpus import Corpus
from .errors import SplitError, UnknownSentenceError
from .rng import shuffle

PARTITIONS = ("train", "dev", "test")
_TIE_ORDER = {"train": 0, "test": 1, "dev": 2}


@dataclass(frozen=True)
class SplitRatios:
    train: float = 0.85
    dev: float = 0.05
    test: float = 0.10

    def __post_init__(self):
        for name in PARTITIONS:
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise SplitError(f"{name} ratio {v} is not in (0, 1)")
        if abs(self.train + self.dev + self.test - 1.0) > 1e-9:
            raise SplitError("split ratios must sum to 1")

    @classmethod
    def parse(cls, text: str) -> "SplitRatios":
        """Parse ``"0.85,0.05,0.10"``."""
        try:
            parts = [float(p) for p in text.split(",")]
        except ValueError:
            raise SplitError(f"cannot parse ratios {text!r}") from None
        if len(parts) != 3:
            raise SplitError("expected three comma-separated ratios")
        return cls(*parts)

    def as_tuple(self):
        return (self.train, self.dev, self.test)


def apportion(n: int, ratios: SplitRatios) -> dict[str, int]:
    """Largest-remainder sizes for ``n`` items.

    Ratios are read as their shortest decimal form, so 0.85 * 20 is exactly 17.
    """
    quotas = {p: Fraction(repr(getattr(ratios, p))) * n for p in PARTITIONS}
    sizes = {p: math.floor(q) for p, q in quotas.items()}
    order = sorted(PARTITIONS, key=lambda p: (-(quotas[p] - sizes[p]), _TIE_ORDER[p]))
    seats = n - sum(sizes.values())
    for p in order[:max(seats, 0)]:
        sizes[p] += 1
    return sizes


@dataclass(frozen=True)
class SplitAssignment:
    partition_of: dict[str, str]
    seed: int
    ratios: SplitRatios

    def ids(self, partition: str) -> list[str]:
        return sorted(s for s, p in self.partition_of.items() if p == partition)

    def sizes(self) -> dict[str, int]:
        return {p: len(self.ids(p)) for p in PARTITIONS}

    def lines(self) -> list[str]:
        header = {"type": "split", "seed": self.seed, "ratios": list(self.ratios.as_tuple())}
        out = [json.dumps(header, separators=(",", ":"))]
        for sid in sorted(self.partition_of):
            row = {"sentence_id": sid, "partition": self.partition_of[sid]}
            out.append(json.dumps(row, ensure_ascii=False, separators=(",", ":")))
        return out

    def save(self, path) -> None:
        Path(path).write_text("".join(line + "\n" for line in self.lines()), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "SplitAssignment":
        with open(path, encoding="utf-8") as fh:
            rows = [json.loads(line) for line in fh if line.strip()]
        if not rows or rows[0].get("type") != "split":
            raise SplitError(f"{path}: missing split header line")
        header, body = rows[0], rows[1:]
        mapping = {}
        for row in body:
            sid, part = row["sentence_id"], row["partition"]
            if part not in PARTITIONS:
                raise SplitError(f"unknown partition {part!r}")
            if sid in mapping:
                raise SplitError(f"sentence {sid!r} assigned twice")
            mapping[sid] = part
        return cls(mapping, int(header["seed"]), SplitRatios(*header["ratios"]))


def split_corpus(corpus: Corpus, ratios: SplitRatios = SplitRatios(), seed: int = 0) -> SplitAssignment:
    ids = sorted(s.id for s in corpus.sentences)
    if len(ids) < 3:
        raise SplitError(f"need at least 3 sentences to split, got {len(ids)}")
    if seed < 0:
        raise SplitError("seed must be unsigned")
    order = shuffle(ids, seed)
    sizes = apportion(len(ids), ratios)
    mapping = {}
    pos = 0
    for part in PARTITIONS:
        for sid in order[pos:pos + sizes[part]]:
            mapping[sid] = part
        pos += sizes[part]
    return SplitAssignment(mapping, seed, ratios)


def project(corpus: Corpus, assignment: SplitAssignment, partition: str) -> Corpus:
    """Sub-corpus of one partition; the ontology is kept whole."""
    if partition not in PARTITIONS:
        raise SplitError(f"unknown partition {partition!r}")
    corpus_ids = {s.id for s in corpus.sentences}
    if corpus_ids != set(assignment.partition_of):
        missing = sorted(corpus_ids - set(assignment.partition_of))
        extra = sorted(set(assignment.partition_of) - corpus_ids)
        raise UnknownSentenceError(
            f"split does not match corpus (unassigned: {missing[:3]}, unknown: {extra[:3]})"
        )
    keep = {sid for sid, p in assignment.partition_of.items() if p == partition}
    return corpus.with_content(
        [s for s in corpus.sentences if s.id in keep],
        [a for a in corpus.annotations if a.sentence_id in keep],
    )
