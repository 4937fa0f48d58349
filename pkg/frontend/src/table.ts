/** Row models for the results table, in exactly the order delivered. */

import { renderHighlight } from "./highlight.js";
import { rowKey } from "./state.js";
import type { SearchResponse } from "./types.js";

export interface RowModel {
  key: string;
  locus: string;
  workId: string;
  distance: number;
  interval: number;
  surfaceText: string;
  highlightHtml: string;
  highlightCost: number;
  warning: string | null;
  isNew: boolean;
}

export function buildRows(response: SearchResponse, newKeys: Set<string>): RowModel[] {
  return response.matches.map((match) => {
    const rendered = renderHighlight(match);
    const key = rowKey(match);
    return {
      key,
      locus: match.locus,
      workId: match.work_id,
      distance: match.total_distance,
      interval: match.interval,
      surfaceText: match.surface_text,
      highlightHtml: rendered.html,
      highlightCost: rendered.cost,
      warning: rendered.warning,
      isNew: newKeys.has(key),
    };
  });
}
