"""Trigger-only event extraction and pairwise temporal relation classification.

Both operations are pure given a backend.  The backend contract is the
plug-in point for trained scorers: ``event_scores`` returns one trigger
probability per document token, ``relation_scores`` a probability
distribution over the configured relation label set for an event pair.
"""

from __future__ import annotations

from typing import List, Mapping, Optional, Protocol, Sequence, Tuple

from .model import (
    GENERIC_SUBTYPE,
    MATRES_LABELS,
    Document,
    EventMention,
    EventSource,
    RelationLabel,
    Span,
    TemporalRelation,
)

DISTRIBUTION_TOLERANCE = 1e-6


class BackendError(RuntimeError):
    pass


class TriggerRelationBackend(Protocol):
    def event_scores(self, document: Document) -> Sequence[float]:
        """Probability of being an event trigger, one value per token."""

    def relation_scores(
        self, document: Document, pair: Tuple[EventMention, EventMention]
    ) -> Mapping[RelationLabel, float]:
        """Distribution over relation labels for (earlier, later) events."""


def extract_triggers(
    document: Document,
    backend: TriggerRelationBackend,
    threshold: float = 0.5,
) -> List[EventMention]:
    """One single-token generic event per token scoring at or above threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    try:
        scores = list(backend.event_scores(document))
    except Exception as exc:
        raise BackendError(f"event scoring failed: {exc}") from exc
    if len(scores) != len(document.tokens):
        raise BackendError(
            f"backend returned {len(scores)} event scores for {len(document.tokens)} tokens"
        )
    for i, p in enumerate(scores):
        if not 0.0 <= p <= 1.0:
            raise BackendError(f"event score {p} at token {i} outside [0, 1]")
    events = []
    for index, p in enumerate(scores):
        if p < threshold:
            continue
        sentence_index, local = document.position_of(index)
        events.append(
            EventMention(
                id=f"t{index}",
                trigger=Span(sentence_index, local, local + 1),
                subtype=GENERIC_SUBTYPE,
                source=EventSource.TRIGGER_ONLY,
            )
        )
    return events


def _pick_label(distribution: Mapping[RelationLabel, float]) -> RelationLabel:
    """Argmax with deterministic ties: earlier label in declaration order wins."""
    total = sum(distribution.values())
    if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
        raise BackendError(f"relation distribution sums to {total}, expected 1")
    best = None
    for label in RelationLabel:
        if label not in distribution:
            continue
        if best is None or distribution[label] > distribution[best]:
            best = label
    if best is None:
        raise BackendError("relation distribution is empty")
    return best


def classify_relations(
    document: Document,
    events: Sequence[EventMention],
    backend: TriggerRelationBackend,
    max_sentence_gap: Optional[int] = None,
) -> List[TemporalRelation]:
    """One relation per unordered event pair, source = earlier-in-text event.

    ``max_sentence_gap`` optionally skips pairs further apart than the given
    number of sentences (default: no limit).
    """
    seen = set()
    for event in events:
        if event.id in seen:
            raise ValueError(f"event id collision: {event.id}")
        seen.add(event.id)
    ordered = sorted(events, key=lambda e: e.position())
    relations = []
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            earlier, later = ordered[i], ordered[j]
            gap = later.trigger.sentence_index - earlier.trigger.sentence_index
            if max_sentence_gap is not None and gap > max_sentence_gap:
                continue
            try:
                distribution = backend.relation_scores(document, (earlier, later))
            except Exception as exc:
                raise BackendError(f"relation scoring failed: {exc}") from exc
            label = _pick_label(distribution)
            relations.append(TemporalRelation(earlier.id, later.id, label))
    return relations


class LexiconTriggerBackend:
    """Deterministic stand-in for the joint trigger/relation scorer.

    Trigger scores come from a surface-form lexicon; relation scores from a
    fixed rule table: explicit pair overrides first, then an anteriority cue
    (perfect-tense markers shortly before the later trigger), then a
    simultaneity cue between the triggers, then vague for distant sentence
    pairs, and narrative order otherwise.
    """

    def __init__(
        self,
        trigger_lexicon: Sequence[str],
        pair_rules: Optional[Mapping[Tuple[str, str], RelationLabel]] = None,
        anterior_markers: Sequence[str] = ("been", "had", "previously", "already", "earlier"),
        simultaneous_markers: Sequence[str] = ("while", "meanwhile", "simultaneously"),
        vague_sentence_gap: int = 2,
        labels: Sequence[RelationLabel] = MATRES_LABELS,
        hit_probability: float = 0.9,
        miss_probability: float = 0.05,
        chosen_probability: float = 0.7,
    ):
        self.trigger_lexicon = {s.lower() for s in trigger_lexicon}
        self.pair_rules = {
            (a.lower(), b.lower()): label for (a, b), label in (pair_rules or {}).items()
        }
        self.anterior_markers = {s.lower() for s in anterior_markers}
        self.simultaneous_markers = {s.lower() for s in simultaneous_markers}
        self.vague_sentence_gap = vague_sentence_gap
        self.labels = tuple(labels)
        self.hit_probability = hit_probability
        self.miss_probability = miss_probability
        self.chosen_probability = chosen_probability

    @classmethod
    def from_config(cls, config: Mapping) -> "LexiconTriggerBackend":
        pair_rules = {
            tuple(key.split("|", 1)): RelationLabel(value)
            for key, value in config.get("pair_rules", {}).items()
        }
        return cls(
            trigger_lexicon=config.get("triggers", ()),
            pair_rules=pair_rules,
            anterior_markers=config.get("anterior_markers", ()),
            simultaneous_markers=config.get("simultaneous_markers", ()),
            vague_sentence_gap=config.get("vague_sentence_gap", 2),
        )

    def event_scores(self, document: Document) -> List[float]:
        return [
            self.hit_probability if t.surface.lower() in self.trigger_lexicon else self.miss_probability
            for t in document.tokens
        ]

    def _rule_label(self, document, earlier, later) -> RelationLabel:
        key = (
            document.span_surface(earlier.trigger).lower(),
            document.span_surface(later.trigger).lower(),
        )
        if key in self.pair_rules:
            return self.pair_rules[key]
        later_start = document.global_index(
            later.trigger.sentence_index, later.trigger.token_start
        )
        window = document.tokens[max(0, later_start - 3) : later_start]
        if any(t.surface.lower() in self.anterior_markers for t in window):
            return RelationLabel.AFTER
        if earlier.trigger.sentence_index == later.trigger.sentence_index:
            earlier_end = document.global_index(
                earlier.trigger.sentence_index, earlier.trigger.token_end - 1
            )
            between = document.tokens[earlier_end + 1 : later_start]
            if any(t.surface.lower() in self.simultaneous_markers for t in between):
                return RelationLabel.SIMULTANEOUS
        gap = later.trigger.sentence_index - earlier.trigger.sentence_index
        if gap >= self.vague_sentence_gap:
            return RelationLabel.VAGUE
        return RelationLabel.BEFORE

    def relation_scores(self, document, pair) -> Mapping[RelationLabel, float]:
        earlier, later = pair
        chosen = self._rule_label(document, earlier, later)
        if chosen not in self.labels:
            chosen = RelationLabel.VAGUE
        rest = (1.0 - self.chosen_probability) / (len(self.labels) - 1)
        return {
            label: self.chosen_probability if label is chosen else rest for label in self.labels
        }
