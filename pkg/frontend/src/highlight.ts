/** Edit-script rendering: characters colored by operation class.
 *
 * The rendered op counts always sum to the distance the row displays; the
 * parity test enforces this for every fixture match. The UI never computes
 * distances itself, it only visualizes the script the service sent.
 */

import type { EditOp, MatchRecord } from "./types.js";

export interface OpCounts {
  match: number;
  substitute: number;
  insert: number;
  delete: number;
}

export interface RenderedHighlight {
  html: string;
  counts: OpCounts;
  cost: number;
  warning: string | null;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function countOps(ops: EditOp[]): OpCounts {
  const counts: OpCounts = { match: 0, substitute: 0, insert: 0, delete: 0 };
  for (const op of ops) {
    counts[op.op] += 1;
  }
  return counts;
}

export function opCost(counts: OpCounts): number {
  return counts.substitute + counts.insert + counts.delete;
}

/** Render one script as the target string with per-character op classes.
 * Matches stay plain; substituted and inserted characters carry their class;
 * deleted source characters appear struck through at their position. */
export function renderOps(ops: EditOp[]): string {
  const parts: string[] = [];
  for (const op of ops) {
    switch (op.op) {
      case "match":
        parts.push(`<span class="op-match">${escapeHtml(op.source_char)}</span>`);
        break;
      case "substitute":
        parts.push(
          `<span class="op-substitute" title="${escapeHtml(op.source_char)} → ${escapeHtml(
            op.target_char,
          )}">${escapeHtml(op.target_char)}</span>`,
        );
        break;
      case "insert":
        parts.push(`<span class="op-insert">${escapeHtml(op.target_char)}</span>`);
        break;
      case "delete":
        parts.push(`<span class="op-delete">${escapeHtml(op.source_char)}</span>`);
        break;
    }
  }
  return parts.join("");
}

export function renderHighlight(match: MatchRecord): RenderedHighlight {
  if (match.mode === "fixed" && match.script) {
    const counts = countOps(match.script);
    return {
      html: renderOps(match.script),
      counts,
      cost: opCost(counts),
      warning: null,
    };
  }
  if (match.mode === "free" && match.assignment && match.assignment.length > 0) {
    const total: OpCounts = { match: 0, substitute: 0, insert: 0, delete: 0 };
    const words: string[] = [];
    for (const wa of match.assignment) {
      const counts = countOps(wa.script);
      total.match += counts.match;
      total.substitute += counts.substitute;
      total.insert += counts.insert;
      total.delete += counts.delete;
      words.push(
        `<span class="word-alignment" title="${escapeHtml(wa.query_word)} → ${escapeHtml(
          wa.token_normalized,
        )} (d=${wa.distance})">${renderOps(wa.script)}</span>`,
      );
    }
    return {
      html: words.join('<span class="word-gap"> </span>'),
      counts: total,
      cost: opCost(total),
      warning: null,
    };
  }
  return {
    html: `<span class="op-plain">${escapeHtml(match.surface_text)}</span>`,
    counts: { match: 0, substitute: 0, insert: 0, delete: 0 },
    cost: 0,
    warning: "no edit script on this match; showing plain text",
  };
}
