/**
 * Wire types for the annotation service payloads, plus schema validation.
 *
 * The UI performs no extraction of its own: everything rendered is a pure
 * function of these payloads.
 */

export interface SpanRef {
  sentence: number;
  start: number;
  end: number;
  surface: string;
}

export interface TokenInfo {
  surface: string;
  char_start: number;
  char_end: number;
}

export interface DocumentPayload {
  text: string;
  tokens: TokenInfo[];
  sentences: [number, number][];
}

export interface ArgumentPayload {
  role: string;
  span?: SpanRef;
  value?: string; // pseudo-arguments (negation/speculation) carry a value instead
}

export interface EventPayload {
  id: string;
  trigger: SpanRef;
  subtype: string;
  arguments: ArgumentPayload[];
  duration: string | null;
  negated: boolean;
  speculated: boolean;
  source: string;
}

export interface EntityPayload {
  span: SpanRef;
  entity_type: string;
}

export interface RelationPayload {
  source: string;
  target: string;
  label: string;
}

export interface GraphNodePayload {
  id: string;
  label: string;
  duration: string;
}

export interface GraphEdgePayload {
  source: string;
  target: string;
  label: string;
  symmetric: boolean;
}

export interface GraphPayload {
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
  warnings: string[];
}

export interface AnnotationPayload {
  schema_version: number;
  document: DocumentPayload;
  entities: EntityPayload[];
  events: EventPayload[];
  relations: RelationPayload[];
  graph: GraphPayload;
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isSpan(value: unknown): boolean {
  return (
    isRecord(value) &&
    typeof value.sentence === "number" &&
    typeof value.start === "number" &&
    typeof value.end === "number"
  );
}

/**
 * Structural check of a service `result` payload.  Returns a list of
 * problems; an empty list means the payload is safe to render.
 */
export function validateAnnotation(raw: unknown): string[] {
  const problems: string[] = [];
  if (!isRecord(raw)) {
    return ["payload is not an object"];
  }
  const doc = raw.document;
  if (!isRecord(doc) || typeof doc.text !== "string" || !Array.isArray(doc.tokens)) {
    problems.push("missing or malformed document");
  } else if (!Array.isArray(doc.sentences)) {
    problems.push("document lacks sentence ranges");
  }
  if (!Array.isArray(raw.entities)) {
    problems.push("missing entities list");
  } else {
    raw.entities.forEach((entity, i) => {
      if (!isRecord(entity) || !isSpan(entity.span) || typeof entity.entity_type !== "string") {
        problems.push(`entity ${i} is malformed`);
      }
    });
  }
  if (!Array.isArray(raw.events)) {
    problems.push("missing events list");
  } else {
    raw.events.forEach((event, i) => {
      if (
        !isRecord(event) ||
        typeof event.id !== "string" ||
        !isSpan(event.trigger) ||
        !Array.isArray(event.arguments)
      ) {
        problems.push(`event ${i} is malformed`);
      }
    });
  }
  if (!Array.isArray(raw.relations)) {
    problems.push("missing relations list");
  }
  const graph = raw.graph;
  if (!isRecord(graph) || !Array.isArray(graph.nodes) || !Array.isArray(graph.edges)) {
    problems.push("missing or malformed graph");
  }
  return problems;
}
