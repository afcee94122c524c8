/** Stable event colors: same id, same color, across re-renders. */

export const PALETTE = [
  "#ffd54f", // amber
  "#81d4fa", // light blue
  "#a5d6a7", // green
  "#f48fb1", // pink
  "#ce93d8", // purple
  "#ffab91", // deep orange
  "#80cbc4", // teal
  "#e6ee9c", // lime
];

/** FNV-1a over UTF-16 code units. */
export function hashString(value: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < value.length; i++) {
    hash ^= value.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

export function colorFor(eventId: string): string {
  return PALETTE[hashString(eventId) % PALETTE.length];
}
