"""Entity, trigger, and argument extraction over per-token score distributions.

A backend supplies a :class:`ScoreBundle` per sentence; decoding applies
three masks before taking argmax decisions:

* argument-role labels are zeroed on tokens outside every predicted entity,
* trigger subtype labels are zeroed on tokens inside a predicted entity,
* argument labels for roles not valid for the trigger subtype are zeroed.

Masked probability mass is never renormalized, so argmax decisions at
unconstrained positions are unchanged.  Zero-probability labels are never
selected; a token whose allowed labels all score zero falls back to "O".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Mapping, Protocol, Sequence, Tuple

from .model import Argument, Document, EntityMention, EventMention, EventSource, Span
from .ontology import Ontology

DISTRIBUTION_TOLERANCE = 1e-6


class ScoreBundleError(ValueError):
    pass


def _all_o_matrix(n_tokens: int, labels: Sequence[str]):
    row = [1.0 if label == "O" else 0.0 for label in labels]
    return [list(row) for _ in range(n_tokens)]


@dataclass(frozen=True)
class ScoreBundle:
    """Per-token label score distributions for one sentence.

    ``argument_scores`` maps ``(trigger_start, subtype)`` to a token-by-label
    matrix; a callable taking the same key is accepted for backends that
    compute lazily.  Positions without an entry decode as all-"O".
    """

    entity_labels: Tuple[str, ...]
    entity_scores: Tuple[Tuple[float, ...], ...]
    trigger_labels: Tuple[str, ...]
    trigger_scores: Tuple[Tuple[float, ...], ...]
    argument_labels: Tuple[str, ...]
    argument_scores: object  # Mapping[(int, str), matrix] or Callable[(int, str), matrix]

    def __init__(self, entity_labels, entity_scores, trigger_labels, trigger_scores,
                 argument_labels, argument_scores):
        object.__setattr__(self, "entity_labels", tuple(entity_labels))
        object.__setattr__(self, "entity_scores", tuple(tuple(r) for r in entity_scores))
        object.__setattr__(self, "trigger_labels", tuple(trigger_labels))
        object.__setattr__(self, "trigger_scores", tuple(tuple(r) for r in trigger_scores))
        object.__setattr__(self, "argument_labels", tuple(argument_labels))
        object.__setattr__(self, "argument_scores", argument_scores)

    @property
    def n_tokens(self) -> int:
        return len(self.entity_scores)

    def argument_matrix(self, trigger_start: int, subtype: str) -> List[List[float]]:
        if callable(self.argument_scores):
            matrix = self.argument_scores(trigger_start, subtype)
        else:
            matrix = self.argument_scores.get((trigger_start, subtype))
        if matrix is None:
            return _all_o_matrix(self.n_tokens, self.argument_labels)
        return [list(row) for row in matrix]

    def validate(self):
        """Check matrix shapes and that every row is a distribution."""
        for name, labels, matrix in (
            ("entity", self.entity_labels, self.entity_scores),
            ("trigger", self.trigger_labels, self.trigger_scores),
        ):
            if len(matrix) != self.n_tokens:
                raise ScoreBundleError(f"{name} scores have {len(matrix)} rows, expected {self.n_tokens}")
            _check_rows(name, labels, matrix)

    @staticmethod
    def from_fixture(source) -> List["ScoreBundle"]:
        """Load fixture score bundles (one per sentence) from JSON.

        Argument matrices are keyed ``"<position>:<subtype>"``.
        """
        if isinstance(source, (str, Path)):
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            raw = source
        bundles = []
        for entry in raw["sentences"]:
            argument_scores = {}
            for key, matrix in entry.get("argument_scores", {}).items():
                pos_text, _, subtype = key.partition(":")
                argument_scores[(int(pos_text), subtype)] = matrix
            bundles.append(
                ScoreBundle(
                    entity_labels=entry["entity_labels"],
                    entity_scores=entry["entity_scores"],
                    trigger_labels=entry["trigger_labels"],
                    trigger_scores=entry["trigger_scores"],
                    argument_labels=entry["argument_labels"],
                    argument_scores=argument_scores,
                )
            )
        return bundles


def _check_rows(name, labels, matrix):
    for i, row in enumerate(matrix):
        if len(row) != len(labels):
            raise ScoreBundleError(f"{name} row {i} has {len(row)} scores for {len(labels)} labels")
        total = sum(row)
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise ScoreBundleError(f"{name} row {i} sums to {total}, expected 1")
        if any(p < 0 for p in row):
            raise ScoreBundleError(f"{name} row {i} has a negative score")


def decode_bio(labels: Sequence[str]) -> List[Tuple[str, Tuple[int, int]]]:
    """Turn a BIO label sequence into maximal typed spans.

    Total function: a stray I-x (not continuing a same-typed span) starts a
    new span, exactly as if it were B-x.
    """
    spans = []
    current_type = None
    start = 0
    for i, label in enumerate(labels):
        if label == "O":
            if current_type is not None:
                spans.append((current_type, (start, i)))
                current_type = None
            continue
        prefix, _, tag = label.partition("-")
        if prefix == "B" or tag != current_type:
            if current_type is not None:
                spans.append((current_type, (start, i)))
            current_type, start = tag, i
    if current_type is not None:
        spans.append((current_type, (start, len(labels))))
    return spans


def _argmax_label(row: Sequence[float], labels: Sequence[str]) -> str:
    best = max(range(len(row)), key=row.__getitem__)
    if row[best] <= 0.0 and "O" in labels:
        return "O"
    return labels[best]


def greedy_decode(matrix, labels) -> List[str]:
    """Independent per-token argmax; ties break toward the earlier label."""
    return [_argmax_label(row, labels) for row in matrix]


def viterbi_bio(matrix, labels) -> List[str]:
    """Best label sequence under BIO transition constraints.

    Maximizes the product of per-token scores over sequences where I-x only
    continues B-x/I-x of the same type; ties break toward earlier labels.
    """
    n = len(matrix)
    if n == 0:
        return []
    n_labels = len(labels)
    parsed = [label.partition("-") for label in labels]

    def allowed(prev: int, cur: int) -> bool:
        prefix, _, tag = parsed[cur]
        if prefix != "I" or labels[cur] == "O":
            return True
        prev_prefix, _, prev_tag = parsed[prev]
        return prev_prefix in ("B", "I") and prev_tag == tag

    def log(p: float) -> float:
        return math.log(p) if p > 0 else -math.inf

    scores = [[-math.inf] * n_labels for _ in range(n)]
    back = [[0] * n_labels for _ in range(n)]
    for j in range(n_labels):
        prefix = parsed[j][0]
        if prefix == "I" and labels[j] != "O":
            continue  # no span to continue at sentence start
        scores[0][j] = log(matrix[0][j])
    for i in range(1, n):
        for j in range(n_labels):
            emit = log(matrix[i][j])
            best_prev, best_score = None, -math.inf
            for k in range(n_labels):
                if scores[i - 1][k] == -math.inf or not allowed(k, j):
                    continue
                if scores[i - 1][k] > best_score:
                    best_prev, best_score = k, scores[i - 1][k]
            if best_prev is None:
                continue
            scores[i][j] = best_score + emit
            back[i][j] = best_prev
    last = max(range(n_labels), key=lambda j: scores[n - 1][j])
    if scores[n - 1][last] == -math.inf and "O" in labels:
        return ["O"] * n
    path = [last]
    for i in range(n - 1, 0, -1):
        path.append(back[i][path[-1]])
    path.reverse()
    return [labels[j] for j in path]


def _entity_token_set(entities: Sequence[EntityMention]):
    covered = set()
    for entity in entities:
        covered.update(entity.span.tokens())
    return covered


def _check_inventories(bundle: ScoreBundle, ontology: Ontology):
    entity_ok = set(ontology.entity_label_list())
    trigger_ok = set(ontology.trigger_label_list())
    argument_ok = set(ontology.argument_label_list())
    for name, labels, ok in (
        ("entity", bundle.entity_labels, entity_ok),
        ("trigger", bundle.trigger_labels, trigger_ok),
        ("argument", bundle.argument_labels, argument_ok),
    ):
        unknown = [l for l in labels if l not in ok]
        if unknown:
            raise ScoreBundleError(f"{name} labels not in ontology: {unknown}")
        if "O" not in labels:
            raise ScoreBundleError(f"{name} labels lack 'O'")


def apply_decoding_constraints(
    bundle: ScoreBundle, entities: Sequence[EntityMention], ontology: Ontology
) -> ScoreBundle:
    """Zero out label probabilities that violate the decoding constraints.

    Remaining mass is not renormalized; argmax decisions at unconstrained
    positions are unaffected.
    """
    _check_inventories(bundle, ontology)
    covered = _entity_token_set(entities)

    trigger_scores = []
    for i, row in enumerate(bundle.trigger_scores):
        if i in covered:
            trigger_scores.append(
                tuple(p if label == "O" else 0.0 for label, p in zip(bundle.trigger_labels, row))
            )
        else:
            trigger_scores.append(tuple(row))

    argument_labels = bundle.argument_labels
    raw = bundle

    def masked_arguments(trigger_start: int, subtype: str):
        roles = ontology.valid_roles_for(subtype)
        matrix = raw.argument_matrix(trigger_start, subtype)
        out = []
        for i, row in enumerate(matrix):
            masked_row = []
            for label, p in zip(argument_labels, row):
                if label == "O":
                    masked_row.append(p)
                    continue
                role = label.partition("-")[2]
                if i not in covered or role not in roles:
                    masked_row.append(0.0)
                else:
                    masked_row.append(p)
            out.append(masked_row)
        return out

    return ScoreBundle(
        entity_labels=bundle.entity_labels,
        entity_scores=bundle.entity_scores,
        trigger_labels=bundle.trigger_labels,
        trigger_scores=trigger_scores,
        argument_labels=argument_labels,
        argument_scores=masked_arguments,
    )


def _trigger_runs(labels: Sequence[str]) -> List[Tuple[str, Tuple[int, int]]]:
    """Group adjacent tokens with the same non-O subtype into trigger spans."""
    runs = []
    current = None
    start = 0
    for i, label in enumerate(labels):
        if label == current:
            continue
        if current is not None and current != "O":
            runs.append((current, (start, i)))
        current, start = label, i
    if current is not None and current != "O":
        runs.append((current, (start, len(labels))))
    return runs


def extract_ace_events(
    document: Document,
    sentence_index: int,
    bundle: ScoreBundle,
    ontology: Ontology,
    decoder: str = "greedy",
) -> Tuple[List[EntityMention], List[EventMention]]:
    """Decode one sentence into entity mentions and structured events.

    Entities are decoded first and frozen as constraints for trigger and
    argument decoding.  ``decoder`` selects "greedy" per-token argmax or
    "viterbi" with BIO transition constraints for entity/argument sequences.
    """
    if decoder not in ("greedy", "viterbi"):
        raise ValueError(f"unknown decoder {decoder!r}")
    n = document.sentence_length(sentence_index)
    if bundle.n_tokens != n:
        raise ScoreBundleError(f"bundle has {bundle.n_tokens} tokens, sentence has {n}")
    bundle.validate()
    sequence_decode = greedy_decode if decoder == "greedy" else viterbi_bio

    entity_labels = sequence_decode(bundle.entity_scores, bundle.entity_labels)
    entities = [
        EntityMention(span=Span(sentence_index, s, e), entity_type=t)
        for t, (s, e) in decode_bio(entity_labels)
    ]

    masked = apply_decoding_constraints(bundle, entities, ontology)

    trigger_labels = greedy_decode(masked.trigger_scores, masked.trigger_labels)
    events = []
    for subtype, (start, end) in _trigger_runs(trigger_labels):
        matrix = masked.argument_matrix(start, subtype)
        _check_rows("argument", masked.argument_labels, bundle.argument_matrix(start, subtype))
        argument_labels = sequence_decode(matrix, masked.argument_labels)
        arguments = [
            Argument(role=role, span=Span(sentence_index, s, e))
            for role, (s, e) in decode_bio(argument_labels)
        ]
        events.append(
            EventMention(
                id=f"s{sentence_index}t{start}",
                trigger=Span(sentence_index, start, end),
                subtype=subtype,
                arguments=arguments,
                source=EventSource.ACE,
            )
        )
    return entities, events


def verify_constraints(
    entities: Sequence[EntityMention],
    events: Sequence[EventMention],
    ontology: Ontology,
) -> List[str]:
    """Post-hoc check of the three decoding constraints on decoded output.

    Returns human-readable violations; empty means the output is consistent.
    """
    violations = []
    covered = _entity_token_set(entities)
    for event in events:
        for t in event.trigger.tokens():
            if t in covered:
                violations.append(
                    f"event {event.id}: trigger token {t} lies inside an entity"
                )
        try:
            roles = ontology.valid_roles_for(event.subtype)
        except Exception:
            violations.append(f"event {event.id}: unknown subtype {event.subtype!r}")
            continue
        for arg in event.arguments:
            if arg.role not in roles:
                violations.append(
                    f"event {event.id}: role {arg.role!r} invalid for {event.subtype}"
                )
            for t in arg.span.tokens():
                if t not in covered:
                    violations.append(
                        f"event {event.id}: argument token {t} outside every entity"
                    )
    return violations


class AceBackend(Protocol):
    """Scoring contract for the structured event extraction stage."""

    def score_sentence(self, document: Document, sentence_index: int) -> ScoreBundle:
        ...


def _distribution(labels: Sequence[str], target: str, confidence: float):
    rest = (1.0 - confidence) / (len(labels) - 1)
    return [confidence if label == target else rest for label in labels]


class LexiconAceBackend:
    """Deterministic score backend driven by surface-form lexicons.

    Stands in for a trained scorer: entity mentions come from a longest-match
    lexicon, trigger subtypes from a surface map, and argument roles from
    per-subtype rules binding the nearest entity of an accepted type on an
    accepted side.
    """

    def __init__(
        self,
        ontology: Ontology,
        entity_lexicon: Mapping[str, str],
        trigger_map: Mapping[str, str],
        argument_rules: Mapping[str, Sequence[Mapping]],
        confidence: float = 0.9,
    ):
        self.ontology = ontology
        self.entity_lexicon = {
            tuple(k.lower().split()): v for k, v in entity_lexicon.items()
        }
        self.trigger_map = {k.lower(): v for k, v in trigger_map.items()}
        self.argument_rules = argument_rules
        self.confidence = confidence

    @classmethod
    def from_config(cls, ontology: Ontology, config: Mapping, confidence: float = 0.9):
        return cls(
            ontology,
            entity_lexicon=config.get("entities", {}),
            trigger_map=config.get("triggers", {}),
            argument_rules=config.get("argument_rules", {}),
            confidence=confidence,
        )

    def _match_entities(self, surfaces: Sequence[str]):
        """Greedy longest-match over lowercased token sequences."""
        lowered = [s.lower() for s in surfaces]
        max_len = max((len(k) for k in self.entity_lexicon), default=0)
        found = []
        i = 0
        while i < len(lowered):
            match = None
            for width in range(min(max_len, len(lowered) - i), 0, -1):
                key = tuple(lowered[i : i + width])
                if key in self.entity_lexicon:
                    match = (i, i + width, self.entity_lexicon[key])
                    break
            if match:
                found.append(match)
                i = match[1]
            else:
                i += 1
        return found

    def _assign_arguments(self, trigger_start, subtype, entity_spans):
        """First matching rule wins; each rule binds the nearest free entity."""
        assignments = {}
        used = set()
        for rule in self.argument_rules.get(subtype, ()):
            accepted = set(rule.get("entity_types", ()))
            side = rule.get("side", "any")
            best = None
            for idx, (s, e, etype) in enumerate(entity_spans):
                if idx in used or etype not in accepted:
                    continue
                if side == "left" and s >= trigger_start:
                    continue
                if side == "right" and e <= trigger_start:
                    continue
                distance = min(abs(s - trigger_start), abs(e - 1 - trigger_start))
                if best is None or distance < best[0]:
                    best = (distance, idx)
            if best is not None:
                used.add(best[1])
                assignments[entity_spans[best[1]][:2]] = rule["role"]
        return assignments

    def score_sentence(self, document: Document, sentence_index: int) -> ScoreBundle:
        surfaces = document.sentence_surfaces(sentence_index)
        n = len(surfaces)
        entity_labels = self.ontology.entity_label_list()
        trigger_labels = self.ontology.trigger_label_list()
        argument_labels = self.ontology.argument_label_list()

        entity_spans = self._match_entities(surfaces)
        entity_rows = [_distribution(entity_labels, "O", self.confidence) for _ in range(n)]
        for s, e, etype in entity_spans:
            entity_rows[s] = _distribution(entity_labels, f"B-{etype}", self.confidence)
            for i in range(s + 1, e):
                entity_rows[i] = _distribution(entity_labels, f"I-{etype}", self.confidence)

        trigger_rows = [_distribution(trigger_labels, "O", self.confidence) for _ in range(n)]
        trigger_positions = []
        for i, surface in enumerate(surfaces):
            subtype = self.trigger_map.get(surface.lower())
            if subtype is not None and subtype in self.ontology.valid_roles:
                trigger_rows[i] = _distribution(trigger_labels, subtype, self.confidence)
                trigger_positions.append((i, subtype))

        argument_scores = {}
        for position, subtype in trigger_positions:
            assignments = self._assign_arguments(position, subtype, entity_spans)
            rows = [_distribution(argument_labels, "O", self.confidence) for _ in range(n)]
            for (s, e), role in assignments.items():
                rows[s] = _distribution(argument_labels, f"B-{role}", self.confidence)
                for i in range(s + 1, e):
                    rows[i] = _distribution(argument_labels, f"I-{role}", self.confidence)
            argument_scores[(position, subtype)] = rows

        return ScoreBundle(
            entity_labels=entity_labels,
            entity_scores=entity_rows,
            trigger_labels=trigger_labels,
            trigger_scores=trigger_rows,
            argument_labels=argument_labels,
            argument_scores=argument_scores,
        )


class FixtureAceBackend:
    """Serve pre-built score bundles, one per sentence, for tests and demos."""

    def __init__(self, bundles: Sequence[ScoreBundle]):
        self.bundles = list(bundles)

    @classmethod
    def from_file(cls, path) -> "FixtureAceBackend":
        return cls(ScoreBundle.from_fixture(path))

    def score_sentence(self, document: Document, sentence_index: int) -> ScoreBundle:
        return self.bundles[sentence_index]
