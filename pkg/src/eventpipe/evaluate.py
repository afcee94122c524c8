"""Scoring of predicted against gold annotations.

Micro precision/recall/F1 under the usual criteria: an entity is correct if
span and type match; a trigger is identified on span match and classified if
the subtype also matches; an argument is identified on span plus event type
and classified if the role also matches.  Span match is exact token-range
equality; no partial credit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

from .model import AnnotationResult


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


@dataclass(frozen=True)
class ExtractionScores:
    entity: PRF
    trig_i: PRF
    trig_c: PRF
    arg_i: PRF
    arg_c: PRF

    def to_dict(self) -> dict:
        return {
            "entity": self.entity.to_dict(),
            "trig_i": self.trig_i.to_dict(),
            "trig_c": self.trig_c.to_dict(),
            "arg_i": self.arg_i.to_dict(),
            "arg_c": self.arg_c.to_dict(),
        }


CRITERIA = ("entity", "trig_i", "trig_c", "arg_i", "arg_c")


def _keys(result: AnnotationResult) -> Dict[str, Counter]:
    keys = {name: Counter() for name in CRITERIA}
    for entity in result.entities:
        span = entity.span
        keys["entity"][(span.sentence_index, span.token_start, span.token_end, entity.entity_type)] += 1
    for event in result.events:
        trigger = (
            event.trigger.sentence_index,
            event.trigger.token_start,
            event.trigger.token_end,
        )
        keys["trig_i"][trigger] += 1
        keys["trig_c"][trigger + (event.subtype,)] += 1
        for arg in event.arguments:
            span = (arg.span.sentence_index, arg.span.token_start, arg.span.token_end)
            keys["arg_i"][span + (event.subtype,)] += 1
            keys["arg_c"][span + (event.subtype, arg.role)] += 1
    return keys


def _prf(predicted: Counter, gold: Counter) -> PRF:
    n_predicted = sum(predicted.values())
    n_gold = sum(gold.values())
    if n_predicted == 0 and n_gold == 0:
        return PRF(1.0, 1.0, 1.0)
    matched = sum((predicted & gold).values())
    precision = matched / n_predicted if n_predicted else 0.0
    recall = matched / n_gold if n_gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision, recall, f1)


def score_extraction(predicted: AnnotationResult, gold: AnnotationResult) -> ExtractionScores:
    """Score one predicted annotation against gold for the same document."""
    if predicted.document != gold.document:
        raise ValueError("predicted and gold annotations are over different documents")
    return _score_pairs([(predicted, gold)])


def score_corpus(
    pairs: Iterable[Tuple[AnnotationResult, AnnotationResult]]
) -> ExtractionScores:
    """Micro-pooled scores over (predicted, gold) result pairs."""
    pairs = list(pairs)
    for predicted, gold in pairs:
        if predicted.document != gold.document:
            raise ValueError("a predicted/gold pair is over different documents")
    return _score_pairs(pairs)


def _score_pairs(pairs: Sequence[Tuple[AnnotationResult, AnnotationResult]]) -> ExtractionScores:
    pooled_pred = {name: Counter() for name in CRITERIA}
    pooled_gold = {name: Counter() for name in CRITERIA}
    for doc_index, (predicted, gold) in enumerate(pairs):
        for name, counter in _keys(predicted).items():
            pooled_pred[name].update({(doc_index,) + k: v for k, v in counter.items()})
        for name, counter in _keys(gold).items():
            pooled_gold[name].update({(doc_index,) + k: v for k, v in counter.items()})
    return ExtractionScores(
        **{name: _prf(pooled_pred[name], pooled_gold[name]) for name in CRITERIA}
    )
