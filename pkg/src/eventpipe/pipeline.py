"""Pipeline orchestration: extract, merge, flag, classify, and build the graph.

Dataflow per document: tokenize, run the structured and trigger-only
extractors, resolve negation/speculation scopes, merge the two event lists,
flag in-scope events, predict durations and pairwise relations, then prune
vague relations into the displayed temporal graph.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

from . import ace, negation, tokenizer, triggers
from .duration import predict_duration
from .model import (
    AnnotationResult,
    Document,
    EventMention,
    GraphEdge,
    GraphNode,
    RelationLabel,
    TemporalGraph,
    TemporalRelation,
)
from .registry import BackendRegistry


class PipelineError(RuntimeError):
    """A stage failed; ``stage`` names the failing step."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class AnnotateOptions:
    trigger_threshold: float = 0.5
    max_sentence_gap: Optional[int] = None
    decoder: str = "greedy"
    tokenize: Optional[Callable[[str], Document]] = None


def merge_events(
    ace_events: Sequence[EventMention],
    trigger_events: Sequence[EventMention],
    document: Optional[Document] = None,
) -> List[EventMention]:
    """Combine the two extractors' outputs into one document-ordered list.

    Structured events are kept verbatim; a trigger-only event is dropped iff
    its trigger overlaps anything already kept.  Ids are reassigned in
    document order, so merging is idempotent.
    """
    if document is not None:
        for event in list(ace_events) + list(trigger_events):
            if not document.contains_span(event.trigger):
                raise ValueError(
                    f"event {event.id} does not belong to the given document"
                )
    kept = list(ace_events)
    for candidate in trigger_events:
        if any(candidate.trigger.overlaps(existing.trigger) for existing in kept):
            continue
        kept.append(candidate)
    kept.sort(key=lambda e: e.position())
    return [replace(event, id=f"e{i}") for i, event in enumerate(kept)]


def _strongly_connected(nodes: Sequence[str], edges: Sequence[Tuple[str, str]]):
    """Tarjan SCC, iterative; returns components with more than one node."""
    adjacency = {n: [] for n in nodes}
    for src, dst in edges:
        adjacency[src].append(dst)
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    components = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, pointer = work[-1]
            if pointer == 0:
                index[node] = lowlink[node] = counter[0]
                counter[0] += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for k in range(pointer, len(adjacency[node])):
                succ = adjacency[node][k]
                if succ not in index:
                    work[-1] = (node, k + 1)
                    work.append((succ, 0))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1:
                    components.append(sorted(component))
    return components


def build_temporal_graph(
    document: Document,
    events: Sequence[EventMention],
    relations: Sequence[TemporalRelation],
) -> TemporalGraph:
    """Prune vague relations and orient edges so earlier events point later.

    Every event becomes a node (even relation-isolated ones) labeled with
    its trigger surface and duration.  Simultaneous pairs get one symmetric
    edge; containment labels map to directed "includes" edges.  Precedence
    cycles are possible because pairwise classification is unconstrained;
    they are reported in the graph's warnings, not repaired.
    """
    by_id = {}
    nodes = []
    for event in events:
        if event.duration is None:
            raise ValueError(f"event {event.id} has no duration")
        by_id[event.id] = event
        nodes.append(
            GraphNode(
                id=event.id,
                label=document.span_surface(event.trigger),
                duration=event.duration.name.lower(),
            )
        )
    edges = []
    for rel in relations:
        if rel.source_event not in by_id or rel.target_event not in by_id:
            raise ValueError(
                f"relation {rel.source_event}->{rel.target_event} has a dangling endpoint"
            )
        if rel.label is RelationLabel.VAGUE:
            continue
        if rel.label is RelationLabel.BEFORE:
            edges.append(GraphEdge(rel.source_event, rel.target_event, "before"))
        elif rel.label is RelationLabel.AFTER:
            edges.append(GraphEdge(rel.target_event, rel.source_event, "before"))
        elif rel.label is RelationLabel.SIMULTANEOUS:
            edges.append(
                GraphEdge(rel.source_event, rel.target_event, "simultaneous", symmetric=True)
            )
        elif rel.label is RelationLabel.INCLUDES:
            edges.append(GraphEdge(rel.source_event, rel.target_event, "includes"))
        elif rel.label is RelationLabel.INCLUDED_IN:
            edges.append(GraphEdge(rel.target_event, rel.source_event, "includes"))
    precedence = [(e.source, e.target) for e in edges if e.label == "before"]
    warnings = [
        "temporal cycle among events: " + ", ".join(component)
        for component in _strongly_connected([n.id for n in nodes], precedence)
    ]
    return TemporalGraph(nodes=nodes, edges=edges, warnings=warnings)


def annotate(
    text: str,
    domain: str,
    registry: BackendRegistry,
    options: Optional[AnnotateOptions] = None,
) -> AnnotationResult:
    """Run the full pipeline on raw text for one registered domain."""
    backends = registry.get(domain)  # unknown domains raise, listing what is registered
    options = options or AnnotateOptions()

    def stage(name: str, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except Exception as exc:
            raise PipelineError(name, exc) from exc

    document = stage("tokenize", options.tokenize or tokenizer.tokenize, text)

    entities: List = []
    ace_events: List[EventMention] = []

    def run_ace():
        for sentence_index in range(document.n_sentences):
            bundle = backends.ace.score_sentence(document, sentence_index)
            sentence_entities, sentence_events = ace.extract_ace_events(
                document, sentence_index, bundle, backends.ontology, decoder=options.decoder
            )
            entities.extend(sentence_entities)
            ace_events.extend(sentence_events)

    stage("event-extraction", run_ace)
    trigger_events = stage(
        "trigger-extraction",
        triggers.extract_triggers,
        document,
        backends.triggers,
        options.trigger_threshold,
    )
    cues = stage("cue-detection", negation.detect_cues, document, backends.cues)
    scopes = stage(
        "scope-resolution",
        lambda: [negation.resolve_scope(document, cue, backends.scopes) for cue in cues],
    )
    merged = stage("merge", merge_events, ace_events, trigger_events, document)
    flagged = stage("negation-flagging", negation.flag_events, merged, scopes)
    events = stage(
        "duration",
        lambda: [
            replace(e, duration=predict_duration(document, e, backends.duration))
            for e in flagged
        ],
    )
    relations = stage(
        "relations",
        triggers.classify_relations,
        document,
        events,
        backends.triggers,
        options.max_sentence_gap,
    )
    graph = stage("graph", build_temporal_graph, document, events, relations)
    return AnnotationResult(
        document=document,
        entities=entities,
        events=events,
        relations=relations,
        graph=graph,
    )
