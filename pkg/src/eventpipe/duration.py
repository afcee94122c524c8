"""Event duration classification and its ordinal evaluation metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Mapping, Optional, Protocol, Sequence

from .model import Document, DurationCategory, EventMention, Span
from .ontology import SEVEN_CATEGORY_SCALE, clamp_to_seven, duration_distance

DISTRIBUTION_TOLERANCE = 1e-6


class DurationBackend(Protocol):
    def duration_scores(
        self, document: Document, trigger: Span
    ) -> Mapping[DurationCategory, float]:
        """Distribution over the configured duration scale for one trigger."""


def predict_duration(
    document: Document, event: EventMention, backend: DurationBackend
) -> DurationCategory:
    """Argmax duration category; ties break toward the shorter duration."""
    if not document.contains_span(event.trigger):
        raise ValueError(f"trigger span {event.trigger} outside document")
    distribution = backend.duration_scores(document, event.trigger)
    total = sum(distribution.values())
    if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
        raise ValueError(f"duration distribution sums to {total}, expected 1")
    best = None
    for category in sorted(distribution, key=lambda c: c.rank):
        if best is None or distribution[category] > distribution[best]:
            best = category
    if best is None:
        raise ValueError("duration distribution is empty")
    return best


class LexiconDurationBackend:
    """Deterministic context-sensitive stand-in for a trained duration model.

    A trigger's default category comes from a surface lexicon; a context
    keyword anywhere in the trigger's sentence overrides it, which is what
    makes the same trigger resolve differently in different sentences.
    """

    def __init__(
        self,
        defaults: Mapping[str, DurationCategory],
        context: Optional[Mapping[str, DurationCategory]] = None,
        fallback: DurationCategory = DurationCategory.MINUTES,
        scale: Sequence[DurationCategory] = SEVEN_CATEGORY_SCALE,
        chosen_probability: float = 0.7,
    ):
        self.defaults = {k.lower(): v for k, v in defaults.items()}
        self.context = {k.lower(): v for k, v in (context or {}).items()}
        self.fallback = fallback
        self.scale = tuple(scale)
        self.chosen_probability = chosen_probability

    @classmethod
    def from_config(cls, config: Mapping, scale=SEVEN_CATEGORY_SCALE):
        parse = lambda name: DurationCategory[name.upper()]
        return cls(
            defaults={k: parse(v) for k, v in config.get("defaults", {}).items()},
            context={k: parse(v) for k, v in config.get("context", {}).items()},
            fallback=parse(config.get("fallback", "MINUTES")),
            scale=scale,
        )

    def _clamp(self, category: DurationCategory) -> DurationCategory:
        if category in self.scale:
            return category
        if self.scale == SEVEN_CATEGORY_SCALE:
            return clamp_to_seven(category)
        return min(self.scale, key=lambda c: abs(c.rank - category.rank))

    def duration_scores(self, document, trigger) -> Mapping[DurationCategory, float]:
        surface = document.span_surface(trigger).lower()
        chosen = self.defaults.get(surface, self.fallback)
        for token in document.sentence_tokens(trigger.sentence_index):
            override = self.context.get(token.surface.lower())
            if override is not None:
                chosen = override
                break
        chosen = self._clamp(chosen)
        rest = (1.0 - self.chosen_probability) / (len(self.scale) - 1)
        return {c: self.chosen_probability if c is chosen else rest for c in self.scale}


@dataclass(frozen=True)
class DurationMetrics:
    acc: float
    acc_c: float
    spearman: float

    def to_dict(self) -> dict:
        return {"acc": self.acc, "acc_c": self.acc_c, "spearman": self.spearman}


def _average_ranks(values: Sequence[float]) -> List[float]:
    """Positional ranks (1-based) with tied values sharing their average rank."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        average = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = average
        i = j + 1
    return ranks


def _pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    numerator = math.fsum(a * b for a, b in zip(dx, dy))
    var_x = math.fsum(a * a for a in dx)
    var_y = math.fsum(b * b for b in dy)
    denominator = math.sqrt(var_x * var_y)
    if denominator == 0.0:
        return math.nan
    return numerator / denominator


def spearman_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Rank correlation with average-rank tie handling.

    Constant inputs have no defined rank ordering and yield NaN.
    """
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    return _pearson(_average_ranks(xs), _average_ranks(ys))


def duration_metrics(
    predictions: Sequence[DurationCategory], golds: Sequence[DurationCategory]
) -> DurationMetrics:
    """Exact accuracy, coarse accuracy (rank distance at most 1), and Spearman."""
    if len(predictions) != len(golds):
        raise ValueError(f"length mismatch: {len(predictions)} vs {len(golds)}")
    if not predictions:
        raise ValueError("empty input")
    n = len(predictions)
    exact = sum(1 for p, g in zip(predictions, golds) if p is g)
    coarse = sum(1 for p, g in zip(predictions, golds) if duration_distance(p, g) <= 1)
    rho = spearman_correlation(
        [p.rank for p in predictions], [g.rank for g in golds]
    )
    return DurationMetrics(acc=exact / n, acc_c=coarse / n, spearman=rho)
