"""Canonical JSON serialization of annotation results, plus DOT graph export.

The JSON schema mirrors the domain types field-for-field and is the wire
format shared by the CLI, the HTTP service, and the web UI.  Serialization
is deterministic: equal results produce byte-identical text.
"""

from __future__ import annotations

import json
from typing import Mapping

from .model import (
    SPEC_NEG_ROLE,
    AnnotationResult,
    Argument,
    Document,
    DurationCategory,
    EntityMention,
    EventMention,
    EventSource,
    GraphEdge,
    GraphNode,
    RelationLabel,
    Span,
    TemporalGraph,
    TemporalRelation,
    Token,
)

SCHEMA_VERSION = 1


def _span_to_dict(document: Document, span: Span) -> dict:
    return {
        "sentence": span.sentence_index,
        "start": span.token_start,
        "end": span.token_end,
        "surface": document.span_surface(span),
    }


def _span_from_dict(raw: Mapping) -> Span:
    return Span(raw["sentence"], raw["start"], raw["end"])


def _event_to_dict(document: Document, event: EventMention) -> dict:
    arguments = [
        {"role": arg.role, "span": _span_to_dict(document, arg.span)}
        for arg in event.arguments
    ]
    # Non-factual events additionally carry the flag as a pseudo-argument.
    if event.negated:
        arguments.append({"role": SPEC_NEG_ROLE, "value": "negation"})
    if event.speculated:
        arguments.append({"role": SPEC_NEG_ROLE, "value": "speculation"})
    return {
        "id": event.id,
        "trigger": _span_to_dict(document, event.trigger),
        "subtype": event.subtype,
        "arguments": arguments,
        "duration": event.duration.name.lower() if event.duration else None,
        "negated": event.negated,
        "speculated": event.speculated,
        "source": event.source.value,
    }


def result_to_dict(result: AnnotationResult) -> dict:
    document = result.document
    return {
        "schema_version": SCHEMA_VERSION,
        "document": {
            "text": document.text,
            "tokens": [
                {"surface": t.surface, "char_start": t.char_start, "char_end": t.char_end}
                for t in document.tokens
            ],
            "sentences": [list(pair) for pair in document.sentences],
        },
        "entities": [
            {
                "span": _span_to_dict(document, entity.span),
                "entity_type": entity.entity_type,
            }
            for entity in result.entities
        ],
        "events": [_event_to_dict(document, e) for e in result.events],
        "relations": [
            {
                "source": rel.source_event,
                "target": rel.target_event,
                "label": rel.label.value,
            }
            for rel in result.relations
        ],
        "graph": {
            "nodes": [
                {"id": n.id, "label": n.label, "duration": n.duration}
                for n in result.graph.nodes
            ],
            "edges": [
                {
                    "source": e.source,
                    "target": e.target,
                    "label": e.label,
                    "symmetric": e.symmetric,
                }
                for e in result.graph.edges
            ],
            "warnings": list(result.graph.warnings),
        },
    }


def result_from_dict(raw: Mapping) -> AnnotationResult:
    doc_raw = raw["document"]
    document = Document(
        text=doc_raw["text"],
        tokens=[
            Token(t["surface"], t["char_start"], t["char_end"]) for t in doc_raw["tokens"]
        ],
        sentences=[tuple(pair) for pair in doc_raw["sentences"]],
    )
    entities = [
        EntityMention(span=_span_from_dict(e["span"]), entity_type=e["entity_type"])
        for e in raw.get("entities", ())
    ]
    events = []
    for e in raw.get("events", ()):
        events.append(
            EventMention(
                id=e["id"],
                trigger=_span_from_dict(e["trigger"]),
                subtype=e["subtype"],
                arguments=[
                    Argument(role=a["role"], span=_span_from_dict(a["span"]))
                    for a in e.get("arguments", ())
                    if a["role"] != SPEC_NEG_ROLE  # flags live on the event itself
                ],
                duration=(
                    DurationCategory[e["duration"].upper()] if e.get("duration") else None
                ),
                negated=e.get("negated", False),
                speculated=e.get("speculated", False),
                source=EventSource(e.get("source", "ace")),
            )
        )
    relations = [
        TemporalRelation(r["source"], r["target"], RelationLabel(r["label"]))
        for r in raw.get("relations", ())
    ]
    graph_raw = raw.get("graph", {})
    graph = TemporalGraph(
        nodes=[
            GraphNode(n["id"], n["label"], n["duration"]) for n in graph_raw.get("nodes", ())
        ],
        edges=[
            GraphEdge(e["source"], e["target"], e["label"], e.get("symmetric", False))
            for e in graph_raw.get("edges", ())
        ],
        warnings=graph_raw.get("warnings", ()),
    )
    return AnnotationResult(
        document=document, entities=entities, events=events, relations=relations, graph=graph
    )


def to_json(result: AnnotationResult) -> str:
    return json.dumps(result_to_dict(result), sort_keys=True, indent=2)


def from_json(text: str) -> AnnotationResult:
    return result_from_dict(json.loads(text))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(graph: TemporalGraph) -> str:
    """Render the temporal graph in DOT for offline inspection."""
    lines = ["digraph temporal {"]
    for node in graph.nodes:
        label = _dot_escape(f"{node.label}\n({node.duration})")
        lines.append(f'  "{node.id}" [label="{label}"];')
    for edge in graph.edges:
        attributes = f'label="{_dot_escape(edge.label)}"'
        if edge.symmetric:
            attributes += ", dir=none"
        lines.append(f'  "{edge.source}" -> "{edge.target}" [{attributes}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def events_to_tsv(result: AnnotationResult) -> str:
    """Flat tab-separated event table (one row per event)."""
    document = result.document
    header = [
        "id", "sentence", "start", "end", "surface", "subtype",
        "duration", "negated", "speculated", "source", "arguments",
    ]
    rows = ["\t".join(header)]
    for event in result.events:
        arguments = ";".join(
            f"{arg.role}={document.span_surface(arg.span)}" for arg in event.arguments
        )
        rows.append(
            "\t".join(
                [
                    event.id,
                    str(event.trigger.sentence_index),
                    str(event.trigger.token_start),
                    str(event.trigger.token_end),
                    document.span_surface(event.trigger),
                    event.subtype,
                    event.duration.name.lower() if event.duration else "",
                    str(event.negated).lower(),
                    str(event.speculated).lower(),
                    event.source.value,
                    arguments,
                ]
            )
        )
    return "\n".join(rows) + "\n"
