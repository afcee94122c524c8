/**
 * Page wiring: domain picker, example sentences, annotate button, and the
 * three panels (annotated text, event chips, temporal graph).
 */

import { AnnotationClient, ApiError } from "./api";
import { renderGraph } from "./graphview";
import { renderAnnotation } from "./textview";
import type { AnnotationPayload } from "./types";
import { validateAnnotation } from "./types";

export interface UiElements {
  textPanel: HTMLElement;
  eventsPanel: HTMLElement;
  graphPanel: HTMLElement;
  banner: HTMLElement;
}

export function showBanner(ui: UiElements, message: string): void {
  ui.banner.textContent = message;
  ui.banner.classList.remove("hidden");
}

export function clearBanner(ui: UiElements): void {
  ui.banner.textContent = "";
  ui.banner.classList.add("hidden");
}

/**
 * Validate and render one service result.  A payload that fails schema
 * validation produces an error banner and leaves the panels untouched.
 */
export function presentResult(ui: UiElements, raw: unknown): boolean {
  const problems = validateAnnotation(raw);
  if (problems.length > 0) {
    showBanner(ui, `Malformed annotation payload: ${problems[0]}`);
    return false;
  }
  clearBanner(ui);
  const payload = raw as AnnotationPayload;
  renderAnnotation(ui.textPanel, ui.eventsPanel, payload);
  renderGraph(ui.graphPanel, payload.graph);
  return true;
}

function requireElement(root: Document, id: string): HTMLElement {
  const el = root.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

export async function initApp(root: Document, baseUrl?: string): Promise<void> {
  const api = new AnnotationClient(
    baseUrl ?? (root.defaultView?.location.origin.startsWith("http")
      ? root.defaultView.location.origin
      : "http://127.0.0.1:8000"),
  );
  const ui: UiElements = {
    textPanel: requireElement(root, "text-panel"),
    eventsPanel: requireElement(root, "events-panel"),
    graphPanel: requireElement(root, "graph-panel"),
    banner: requireElement(root, "error-banner"),
  };
  const domainSelect = requireElement(root, "domain-select") as HTMLSelectElement;
  const exampleSelect = requireElement(root, "example-select") as HTMLSelectElement;
  const input = requireElement(root, "text-input") as HTMLTextAreaElement;
  const annotateButton = requireElement(root, "annotate-button") as HTMLButtonElement;

  async function refreshExamples(): Promise<void> {
    const examples = await api.examples(domainSelect.value);
    exampleSelect.textContent = "";
    const prompt = root.createElement("option");
    prompt.value = "";
    prompt.textContent = "pick an example…";
    exampleSelect.appendChild(prompt);
    for (const sentence of examples) {
      const option = root.createElement("option");
      option.value = sentence;
      option.textContent = sentence.length > 80 ? sentence.slice(0, 77) + "…" : sentence;
      exampleSelect.appendChild(option);
    }
  }

  async function runAnnotate(): Promise<void> {
    annotateButton.disabled = true;
    try {
      const outcome = await api.annotate(input.value, domainSelect.value);
      if (!outcome.stale) {
        presentResult(ui, outcome.payload);
      }
    } catch (error) {
      showBanner(ui, error instanceof ApiError ? error.message : "Annotation failed.");
    } finally {
      annotateButton.disabled = false;
    }
  }

  try {
    const domains = await api.domains();
    domainSelect.textContent = "";
    for (const domain of domains) {
      const option = root.createElement("option");
      option.value = domain;
      option.textContent = domain;
      domainSelect.appendChild(option);
    }
    await refreshExamples();
  } catch {
    showBanner(ui, "Annotation service unreachable; is it running?");
  }

  domainSelect.addEventListener("change", () => {
    refreshExamples().catch(() => showBanner(ui, "Could not load examples."));
  });
  exampleSelect.addEventListener("change", () => {
    if (exampleSelect.value) {
      input.value = exampleSelect.value;
    }
  });
  annotateButton.addEventListener("click", () => {
    void runAnnotate();
  });
}

// Auto-start when loaded as the page script; test imports see no page.
if (typeof document !== "undefined" && document.getElementById("annotate-button")) {
  void initApp(document);
}
