"""Multiclass averaged perceptron over sparse string features."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Sequence


class AveragedPerceptron:
    """Averaged perceptron with lazy weight averaging.

    ``weights[feature][label]`` holds the current weights during training;
    :meth:`average` replaces them by their average over all update steps.
    """

    def __init__(self, weights=None):
        self.weights: dict[str, dict[str, float]] = weights or {}
        self._totals: dict = defaultdict(float)
        self._stamps: dict = defaultdict(int)
        self.i = 0

    def scores(self, features: Iterable[str], labels: Sequence[str]) -> dict[str, float]:
        out = {label: 0.0 for label in labels}
        for f in features:
            row = self.weights.get(f)
            if not row:
                continue
            for label in labels:
                w = row.get(label)
                if w:
                    out[label] += w
        return out

    def predict(self, features, labels) -> str:
        # ties go to the lexicographically smallest label
        s = self.scores(features, labels)
        return min(labels, key=lambda lab: (-s[lab], lab))

    def update(self, truth: str, guess: str, features) -> None:
        self.i += 1
        if truth == guess:
            return
        for f in features:
            row = self.weights.setdefault(f, {})
            self._bump(f, row, truth, 1.0)
            self._bump(f, row, guess, -1.0)

    def _bump(self, f, row, label, delta):
        key = (f, label)
        w = row.get(label, 0.0)
        self._totals[key] += (self.i - self._stamps[key]) * w
        self._stamps[key] = self.i
        row[label] = w + delta

    def average(self) -> None:
        steps = max(self.i, 1)
        averaged: dict[str, dict[str, float]] = {}
        for f, row in self.weights.items():
            new_row = {}
            for label, w in row.items():
                key = (f, label)
                total = self._totals[key] + (self.i - self._stamps[key]) * w
                avg = total / steps
                if avg:
                    new_row[label] = avg
            if new_row:
                averaged[f] = new_row
        self.weights = averaged
        self._totals.clear()
        self._stamps.clear()


def softmax(scores: dict[str, float]) -> dict[str, float]:
    top = max(scores.values())
    exp = {k: math.exp(v - top) for k, v in scores.items()}
    z = sum(exp.values())
    return {k: v / z for k, v in exp.items()}
