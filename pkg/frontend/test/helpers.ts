import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import type { AnnotationPayload } from "../src/types";

export function loadFixture(name: string): { result: AnnotationPayload } {
  return JSON.parse(readFileSync(resolve("test/fixtures", name), "utf-8"));
}

export function fixtureResult(name: string): AnnotationPayload {
  return loadFixture(name).result;
}

/** Contiguous runs of sorted token indices. */
export function contiguousRuns(indices: number[]): number[][] {
  const sorted = [...indices].sort((a, b) => a - b);
  const runs: number[][] = [];
  for (const index of sorted) {
    const last = runs[runs.length - 1];
    if (last && last[last.length - 1] === index - 1) {
      last.push(index);
    } else {
      runs.push([index]);
    }
  }
  return runs;
}
