"""Negation/speculation cue detection, scope resolution, and event flagging."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, List, Mapping, Protocol, Sequence

from .model import Document, EventMention, Span


class CueKind(Enum):
    NEGATION = "negation"
    SPECULATION = "speculation"


@dataclass(frozen=True)
class Cue:
    span: Span
    kind: CueKind


@dataclass(frozen=True)
class Scope:
    """Sentence-local token indices governed by a cue."""

    cue: Cue
    tokens: FrozenSet[int]

    def __init__(self, cue: Cue, tokens):
        object.__setattr__(self, "cue", cue)
        object.__setattr__(self, "tokens", frozenset(tokens))


class CueBackend(Protocol):
    def detect(self, document: Document) -> Sequence[Cue]:
        ...


class ScopeBackend(Protocol):
    def resolve(self, document: Document, cue: Cue) -> Scope:
        ...


def detect_cues(document: Document, backend: CueBackend) -> List[Cue]:
    """Cues in document order."""
    try:
        cues = list(backend.detect(document))
    except Exception as exc:
        raise RuntimeError(f"cue detection failed: {exc}") from exc
    return sorted(cues, key=lambda c: (c.span.sentence_index, c.span.token_start))


def resolve_scope(document: Document, cue: Cue, backend: ScopeBackend) -> Scope:
    if not document.contains_span(cue.span):
        raise ValueError(f"cue span {cue.span} outside document")
    try:
        return backend.resolve(document, cue)
    except Exception as exc:
        raise RuntimeError(f"scope resolution failed: {exc}") from exc


def flag_events(
    events: Sequence[EventMention], scopes: Sequence[Scope]
) -> List[EventMention]:
    """Set negated/speculated on events whose trigger intersects a scope.

    Flags are only ever set, never cleared, so re-applying the same scopes
    is a no-op.  All other fields and the ordering are preserved.
    """
    flagged = []
    for event in events:
        negated = event.negated
        speculated = event.speculated
        for scope in scopes:
            if scope.cue.span.sentence_index != event.trigger.sentence_index:
                continue
            if any(t in scope.tokens for t in event.trigger.tokens()):
                if scope.cue.kind is CueKind.NEGATION:
                    negated = True
                else:
                    speculated = True
        if negated != event.negated or speculated != event.speculated:
            flagged.append(replace(event, negated=negated, speculated=speculated))
        else:
            flagged.append(event)
    return flagged


class LexiconCueBackend:
    """Cue detection by lowercase surface lookup in an editable word list."""

    def __init__(self, negation: Sequence[str], speculation: Sequence[str]):
        self.negation = {w.lower() for w in negation}
        self.speculation = {w.lower() for w in speculation}

    @classmethod
    def from_config(cls, config: Mapping) -> "LexiconCueBackend":
        return cls(config.get("negation", ()), config.get("speculation", ()))

    def detect(self, document: Document) -> List[Cue]:
        cues = []
        for sentence_index in range(document.n_sentences):
            for local, token in enumerate(document.sentence_tokens(sentence_index)):
                surface = token.surface.lower()
                if surface in self.negation:
                    kind = CueKind.NEGATION
                elif surface in self.speculation:
                    kind = CueKind.SPECULATION
                else:
                    continue
                cues.append(Cue(Span(sentence_index, local, local + 1), kind))
        return cues


def _is_punctuation(surface: str) -> bool:
    return not any(ch.isalnum() for ch in surface)


class RightwardScopeBackend:
    """Scope = tokens after the cue to the end of its sentence.

    Trailing punctuation is excluded, so a cue that is the last content
    token gets an empty scope.
    """

    def resolve(self, document: Document, cue: Cue) -> Scope:
        sentence_index = cue.span.sentence_index
        surfaces = document.sentence_surfaces(sentence_index)
        end = len(surfaces)
        while end > cue.span.token_end and _is_punctuation(surfaces[end - 1]):
            end -= 1
        return Scope(cue=cue, tokens=range(cue.span.token_end, end))
