/**
 * Annotated text rendering: entities get wavy underlines, triggers are
 * clickable, and selecting an event highlights its trigger and arguments in
 * the event's color.  Non-factual events carry a visible badge.
 */

import { colorFor } from "./color";
import type { AnnotationPayload, DocumentPayload, EventPayload, SpanRef } from "./types";

export interface TextViewController {
  selectEvent(eventId: string | null): void;
  selectedEvent(): string | null;
}

function globalIndex(doc: DocumentPayload, sentence: number, local: number): number {
  return doc.sentences[sentence][0] + local;
}

function spanTokenIndices(doc: DocumentPayload, span: SpanRef): number[] {
  const indices: number[] = [];
  for (let t = span.start; t < span.end; t++) {
    indices.push(globalIndex(doc, span.sentence, t));
  }
  return indices;
}

function badgeText(event: EventPayload): string {
  if (event.negated && event.speculated) return "negated, speculated";
  if (event.negated) return "negated";
  if (event.speculated) return "speculated";
  return "";
}

export function renderAnnotation(
  textPanel: HTMLElement,
  eventsPanel: HTMLElement,
  payload: AnnotationPayload,
): TextViewController {
  const doc = payload.document;
  textPanel.textContent = "";
  eventsPanel.textContent = "";

  const tokenElements: HTMLElement[] = [];
  const container = textPanel.ownerDocument;
  doc.tokens.forEach((token, index) => {
    if (index > 0) {
      textPanel.appendChild(container.createTextNode(" "));
    }
    const el = container.createElement("span");
    el.className = "token";
    el.dataset.token = String(index);
    el.textContent = token.surface;
    textPanel.appendChild(el);
    tokenElements.push(el);
  });

  for (const entity of payload.entities) {
    for (const index of spanTokenIndices(doc, entity.span)) {
      tokenElements[index].classList.add("entity");
      tokenElements[index].dataset.entityType = entity.entity_type;
      tokenElements[index].title = entity.entity_type;
    }
  }

  const triggerTokens = new Map<string, number[]>();
  const argumentTokens = new Map<string, number[][]>();
  for (const event of payload.events) {
    triggerTokens.set(event.id, spanTokenIndices(doc, event.trigger));
    argumentTokens.set(
      event.id,
      event.arguments
        .filter((a) => a.span !== undefined)
        .map((a) => spanTokenIndices(doc, a.span as SpanRef)),
    );
  }

  let selected: string | null = null;

  function clearHighlights(): void {
    for (const el of tokenElements) {
      el.classList.remove("selected-trigger", "highlight");
      el.style.backgroundColor = "";
    }
    eventsPanel.querySelectorAll(".event-chip").forEach((chip) => {
      chip.classList.remove("selected");
    });
  }

  function selectEvent(eventId: string | null): void {
    clearHighlights();
    selected = eventId;
    if (eventId === null) return;
    const color = colorFor(eventId);
    for (const index of triggerTokens.get(eventId) ?? []) {
      tokenElements[index].classList.add("selected-trigger");
      tokenElements[index].style.backgroundColor = color;
    }
    for (const span of argumentTokens.get(eventId) ?? []) {
      for (const index of span) {
        tokenElements[index].classList.add("highlight");
        tokenElements[index].style.backgroundColor = color;
      }
    }
    eventsPanel
      .querySelector(`.event-chip[data-event-id="${eventId}"]`)
      ?.classList.add("selected");
  }

  for (const event of payload.events) {
    for (const index of triggerTokens.get(event.id) ?? []) {
      const el = tokenElements[index];
      el.classList.add("trigger");
      el.dataset.eventId = event.id;
      el.addEventListener("click", () => {
        selectEvent(selected === event.id ? null : event.id);
      });
    }

    const chip = container.createElement("button");
    chip.className = "event-chip";
    chip.dataset.eventId = event.id;
    chip.style.borderColor = colorFor(event.id);
    const label = event.subtype === "GENERIC" ? "event" : event.subtype;
    chip.textContent = `${event.trigger.surface} · ${label}`;
    if (event.duration) {
      chip.textContent += ` · ${event.duration}`;
    }
    const badge = badgeText(event);
    if (badge) {
      const mark = container.createElement("span");
      mark.className = "badge";
      mark.textContent = badge;
      chip.appendChild(mark);
    }
    chip.addEventListener("click", () => {
      selectEvent(selected === event.id ? null : event.id);
    });
    eventsPanel.appendChild(chip);
  }

  return {
    selectEvent,
    selectedEvent: () => selected,
  };
}
