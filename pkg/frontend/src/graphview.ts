/**
 * Temporal graph rendering: d3 force-directed layout, arrowheads on
 * directed edges, none on symmetric (simultaneous) ones, node labels
 * carrying the event duration.
 *
 * The simulation is ticked synchronously to a settled layout so rendering
 * is deterministic and works headless.
 */

import * as d3 from "d3";

import type { GraphEdgePayload, GraphPayload } from "./types";

interface SimulationNode extends d3.SimulationNodeDatum {
  id: string;
  label: string;
  duration: string;
}

type SimulationEdge = d3.SimulationLinkDatum<SimulationNode> & GraphEdgePayload;

const WIDTH = 640;
const HEIGHT = 420;

export function renderGraph(panel: HTMLElement, graph: GraphPayload): void {
  panel.textContent = "";
  const doc = panel.ownerDocument;

  if (graph.nodes.length === 0) {
    const placeholder = doc.createElement("p");
    placeholder.className = "placeholder";
    placeholder.textContent = "No events to display.";
    panel.appendChild(placeholder);
    return;
  }

  for (const warning of graph.warnings) {
    const note = doc.createElement("p");
    note.className = "graph-warning";
    note.textContent = warning;
    panel.appendChild(note);
  }

  const nodes: SimulationNode[] = graph.nodes.map((n) => ({ ...n }));
  const edges: SimulationEdge[] = graph.edges.map((e) => ({ ...e }));

  const simulation = d3
    .forceSimulation(nodes)
    .force(
      "link",
      d3
        .forceLink<SimulationNode, SimulationEdge>(edges)
        .id((d) => d.id)
        .distance(130),
    )
    .force("charge", d3.forceManyBody().strength(-350))
    .force("center", d3.forceCenter(WIDTH / 2, HEIGHT / 2))
    .stop();
  simulation.tick(300);

  const svg = d3
    .select(panel)
    .append("svg")
    .attr("viewBox", `0 0 ${WIDTH} ${HEIGHT}`)
    .attr("width", "100%");

  svg
    .append("defs")
    .append("marker")
    .attr("id", "arrowhead")
    .attr("viewBox", "0 -5 10 10")
    .attr("refX", 24)
    .attr("refY", 0)
    .attr("markerWidth", 7)
    .attr("markerHeight", 7)
    .attr("orient", "auto")
    .append("path")
    .attr("d", "M0,-5L10,0L0,5");

  const edgeGroup = svg
    .append("g")
    .attr("class", "edges")
    .selectAll("g")
    .data(edges)
    .join("g")
    .attr("class", (d) => (d.symmetric ? "edge symmetric" : "edge directed"))
    .attr("data-source", (d) => (d.source as SimulationNode).id)
    .attr("data-target", (d) => (d.target as SimulationNode).id);

  edgeGroup
    .append("line")
    .attr("x1", (d) => (d.source as SimulationNode).x ?? 0)
    .attr("y1", (d) => (d.source as SimulationNode).y ?? 0)
    .attr("x2", (d) => (d.target as SimulationNode).x ?? 0)
    .attr("y2", (d) => (d.target as SimulationNode).y ?? 0)
    .attr("marker-end", (d) => (d.symmetric ? null : "url(#arrowhead)"));

  edgeGroup
    .append("text")
    .attr("class", "edge-label")
    .attr("x", (d) => (((d.source as SimulationNode).x ?? 0) + ((d.target as SimulationNode).x ?? 0)) / 2)
    .attr("y", (d) => (((d.source as SimulationNode).y ?? 0) + ((d.target as SimulationNode).y ?? 0)) / 2 - 4)
    .text((d) => d.label);

  const nodeGroup = svg
    .append("g")
    .attr("class", "nodes")
    .selectAll("g")
    .data(nodes)
    .join("g")
    .attr("class", "node")
    .attr("data-node-id", (d) => d.id)
    .attr("transform", (d) => `translate(${d.x ?? 0},${d.y ?? 0})`);

  nodeGroup.append("circle").attr("r", 16);

  nodeGroup
    .append("text")
    .attr("class", "node-label")
    .attr("dy", 30)
    .attr("text-anchor", "middle")
    .text((d) => `${d.label} (${d.duration})`);
}
