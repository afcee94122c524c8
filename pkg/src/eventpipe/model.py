"""Shared domain types for the annotation pipeline.

Everything here is an immutable value object: construction validates the
local invariants and instances are safe to share across threads.  Stage
logic lives in the stage modules, not here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

GENERIC_SUBTYPE = "GENERIC"

SPEC_NEG_ROLE = "speculation or negation"


class DurationCategory(Enum):
    """Ordinal duration buckets, rank 0-10 from shortest to longest."""

    INSTANT = 0
    SECONDS = 1
    MINUTES = 2
    HOURS = 3
    DAYS = 4
    WEEKS = 5
    MONTHS = 6
    YEARS = 7
    DECADES = 8
    CENTURIES = 9
    FOREVER = 10

    @property
    def rank(self) -> int:
        return self.value


class RelationLabel(Enum):
    """Pairwise temporal relation labels.

    Declaration order doubles as the deterministic tie-break order when a
    scorer returns equal probabilities.
    """

    BEFORE = "before"
    AFTER = "after"
    SIMULTANEOUS = "simultaneous"
    VAGUE = "vague"
    INCLUDES = "includes"
    INCLUDED_IN = "included_in"


MATRES_LABELS = (
    RelationLabel.BEFORE,
    RelationLabel.AFTER,
    RelationLabel.SIMULTANEOUS,
    RelationLabel.VAGUE,
)

TBDENSE_LABELS = MATRES_LABELS + (RelationLabel.INCLUDES, RelationLabel.INCLUDED_IN)


class EventSource(Enum):
    ACE = "ace"
    TRIGGER_ONLY = "trigger_only"


@dataclass(frozen=True)
class Token:
    surface: str
    char_start: int
    char_end: int

    def __post_init__(self):
        if not 0 <= self.char_start < self.char_end:
            raise ValueError(f"bad token char range [{self.char_start}, {self.char_end})")


@dataclass(frozen=True)
class Span:
    """Sentence-local token range, half-open."""

    sentence_index: int
    token_start: int
    token_end: int

    def __post_init__(self):
        if self.sentence_index < 0:
            raise ValueError(f"negative sentence index {self.sentence_index}")
        if not 0 <= self.token_start < self.token_end:
            raise ValueError(f"bad span range [{self.token_start}, {self.token_end})")

    def tokens(self) -> range:
        return range(self.token_start, self.token_end)

    def overlaps(self, other: "Span") -> bool:
        return (
            self.sentence_index == other.sentence_index
            and self.token_start < other.token_end
            and other.token_start < self.token_end
        )


@dataclass(frozen=True)
class Document:
    """Tokenized text with sentence segmentation; the universal input carrier."""

    text: str
    tokens: Tuple[Token, ...]
    sentences: Tuple[Tuple[int, int], ...]

    def __init__(self, text: str, tokens: Sequence[Token], sentences: Sequence[Tuple[int, int]]):
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "tokens", tuple(tokens))
        object.__setattr__(self, "sentences", tuple((int(a), int(b)) for a, b in sentences))
        self._validate()

    def _validate(self):
        prev_end = 0
        for i, tok in enumerate(self.tokens):
            if tok.char_start < prev_end:
                raise ValueError(f"token {i} overlaps or precedes its predecessor")
            if tok.char_end > len(self.text):
                raise ValueError(f"token {i} exceeds text bounds")
            if self.text[tok.char_start : tok.char_end] != tok.surface:
                raise ValueError(f"token {i} surface does not match text slice")
            prev_end = tok.char_end
        expected_start = 0
        for j, (start, end) in enumerate(self.sentences):
            if start != expected_start or end <= start:
                raise ValueError(f"sentence {j} range [{start}, {end}) does not partition tokens")
            expected_start = end
        if expected_start != len(self.tokens):
            raise ValueError("sentence ranges do not cover all tokens")

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    def sentence_length(self, sentence_index: int) -> int:
        start, end = self.sentences[sentence_index]
        return end - start

    def sentence_tokens(self, sentence_index: int) -> Tuple[Token, ...]:
        start, end = self.sentences[sentence_index]
        return self.tokens[start:end]

    def sentence_surfaces(self, sentence_index: int) -> list:
        return [t.surface for t in self.sentence_tokens(sentence_index)]

    def position_of(self, token_index: int) -> Tuple[int, int]:
        """Map a document-global token index to (sentence_index, local_index)."""
        for i, (start, end) in enumerate(self.sentences):
            if start <= token_index < end:
                return i, token_index - start
        raise IndexError(f"token index {token_index} out of range")

    def global_index(self, sentence_index: int, local_index: int) -> int:
        start, end = self.sentences[sentence_index]
        if not 0 <= local_index < end - start:
            raise IndexError(f"local index {local_index} out of sentence {sentence_index}")
        return start + local_index

    def contains_span(self, span: Span) -> bool:
        if span.sentence_index >= len(self.sentences):
            return False
        return span.token_end <= self.sentence_length(span.sentence_index)

    def span_surface(self, span: Span) -> str:
        """Original text covered by a span, whitespace preserved."""
        if not self.contains_span(span):
            raise ValueError(f"span {span} not contained in document")
        first = self.tokens[self.global_index(span.sentence_index, span.token_start)]
        last = self.tokens[self.global_index(span.sentence_index, span.token_end - 1)]
        return self.text[first.char_start : last.char_end]


@dataclass(frozen=True)
class EntityMention:
    span: Span
    entity_type: str


@dataclass(frozen=True)
class Argument:
    role: str
    span: Span


@dataclass(frozen=True)
class EventMention:
    id: str
    trigger: Span
    subtype: str
    arguments: Tuple[Argument, ...] = ()
    duration: Optional[DurationCategory] = None
    negated: bool = False
    speculated: bool = False
    source: EventSource = EventSource.ACE

    def __init__(
        self,
        id: str,
        trigger: Span,
        subtype: str,
        arguments: Sequence[Argument] = (),
        duration: Optional[DurationCategory] = None,
        negated: bool = False,
        speculated: bool = False,
        source: EventSource = EventSource.ACE,
    ):
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "trigger", trigger)
        object.__setattr__(self, "subtype", subtype)
        object.__setattr__(self, "arguments", tuple(arguments))
        object.__setattr__(self, "duration", duration)
        object.__setattr__(self, "negated", bool(negated))
        object.__setattr__(self, "speculated", bool(speculated))
        object.__setattr__(self, "source", source)
        if self.subtype == GENERIC_SUBTYPE and self.arguments:
            raise ValueError("generic events carry no arguments")
        for arg in self.arguments:
            if arg.span.sentence_index != self.trigger.sentence_index:
                raise ValueError(
                    f"argument {arg.role} lies outside the trigger's sentence"
                )

    def position(self) -> Tuple[int, int, int]:
        return (self.trigger.sentence_index, self.trigger.token_start, self.trigger.token_end)


@dataclass(frozen=True)
class TemporalRelation:
    """Label for (source, target) where source precedes target in text order."""

    source_event: str
    target_event: str
    label: RelationLabel

    def __post_init__(self):
        if self.source_event == self.target_event:
            raise ValueError("relation endpoints must differ")


@dataclass(frozen=True)
class GraphNode:
    id: str
    label: str
    duration: str


@dataclass(frozen=True)
class GraphEdge:
    source: str
    target: str
    label: str
    symmetric: bool = False


@dataclass(frozen=True)
class TemporalGraph:
    nodes: Tuple[GraphNode, ...] = ()
    edges: Tuple[GraphEdge, ...] = ()
    warnings: Tuple[str, ...] = ()

    def __init__(self, nodes=(), edges=(), warnings=()):
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "warnings", tuple(warnings))
        ids = [n.id for n in self.nodes]
        id_set = set(ids)
        if len(ids) != len(id_set):
            raise ValueError("duplicate graph node ids")
        for edge in self.edges:
            if edge.label == RelationLabel.VAGUE.value:
                raise ValueError("vague edges are pruned before graph construction")
            if edge.source not in id_set or edge.target not in id_set:
                raise ValueError(f"edge {edge.source}->{edge.target} has a dangling endpoint")
            if edge.symmetric != (edge.label == RelationLabel.SIMULTANEOUS.value):
                raise ValueError("exactly the simultaneous edges are symmetric")


@dataclass(frozen=True)
class AnnotationResult:
    document: Document
    entities: Tuple[EntityMention, ...] = ()
    events: Tuple[EventMention, ...] = ()
    relations: Tuple[TemporalRelation, ...] = ()
    graph: TemporalGraph = field(default_factory=TemporalGraph)

    def __init__(self, document, entities=(), events=(), relations=(), graph=None):
        object.__setattr__(self, "document", document)
        object.__setattr__(self, "entities", tuple(entities))
        object.__setattr__(self, "events", tuple(events))
        object.__setattr__(self, "relations", tuple(relations))
        object.__setattr__(self, "graph", graph if graph is not None else TemporalGraph())
        self._validate()

    def _validate(self):
        ids = set()
        for event in self.events:
            if event.id in ids:
                raise ValueError(f"duplicate event id {event.id}")
            ids.add(event.id)
            if not self.document.contains_span(event.trigger):
                raise ValueError(f"event {event.id} trigger span invalid for document")
        for rel in self.relations:
            if rel.source_event not in ids or rel.target_event not in ids:
                raise ValueError(
                    f"relation {rel.source_event}->{rel.target_event} references unknown event"
                )
