/** Search workbench state and its pure transitions.
 *
 * The controls always reflect the request that produced the displayed
 * results; history is append-only within the session; raising only the
 * budget (cutoff or interval) badges rows that were not visible before,
 * which is sound because a larger budget never removes matches.
 */

import type { MatchRecord, SearchRequest, SearchResponse } from "./types.js";

export interface HistoryEntry {
  request: SearchRequest;
  matchCount: number;
}

export interface UiSearchState {
  /** Request behind the currently displayed results (null before first search). */
  displayedRequest: SearchRequest | null;
  response: SearchResponse | null;
  /** Row keys of the previous response when the latest run was a pure budget change. */
  newKeys: Set<string>;
  selection: number | null;
  history: HistoryEntry[];
  error: string | null;
}

export function initialState(): UiSearchState {
  return {
    displayedRequest: null,
    response: null,
    newKeys: new Set(),
    selection: null,
    history: [],
    error: null,
  };
}

export function rowKey(match: MatchRecord): string {
  return `${match.work_id}:${match.start_token}:${match.end_token}:${match.mode}`;
}

function sameWorkSet(a?: string[] | null, b?: string[] | null): boolean {
  const left = [...(a ?? [])].sort();
  const right = [...(b ?? [])].sort();
  return left.length === right.length && left.every((v, i) => v === right[i]);
}

/** True when the two requests differ at most in max_distance / max_interval. */
export function isBudgetAdjustment(
  prev: SearchRequest | null,
  next: SearchRequest,
): boolean {
  if (!prev) return false;
  return (
    prev.corpus_id === next.corpus_id &&
    prev.query === next.query &&
    prev.mode === next.mode &&
    sameWorkSet(prev.work_ids, next.work_ids)
  );
}

export function applyResponse(
  state: UiSearchState,
  request: SearchRequest,
  response: SearchResponse,
): UiSearchState {
  let newKeys = new Set<string>();
  if (state.response && isBudgetAdjustment(state.displayedRequest, request)) {
    const seen = new Set(state.response.matches.map(rowKey));
    newKeys = new Set(
      response.matches.map(rowKey).filter((key) => !seen.has(key)),
    );
  }
  return {
    displayedRequest: request,
    response,
    newKeys,
    selection: null,
    history: [...state.history, { request, matchCount: response.match_count }],
    error: null,
  };
}

/** Failed searches keep the previous results on screen. */
export function applyError(state: UiSearchState, message: string): UiSearchState {
  return { ...state, error: message };
}

export function selectMatch(state: UiSearchState, index: number | null): UiSearchState {
  return { ...state, selection: index };
}

/** The interval control is meaningful only in order-free mode. */
export function intervalAdjustable(mode: string): boolean {
  return mode === "free";
}
