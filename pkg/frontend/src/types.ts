/** Wire types mirroring the filum service JSON exactly (snake_case). */

export type SearchModeName = "fixed" | "free";

export interface SearchRequest {
  corpus_id: string;
  work_ids?: string[] | null;
  query: string;
  mode: SearchModeName;
  max_distance: number;
  max_interval: number;
  context_lines?: number;
}

export type EditOpKind = "match" | "substitute" | "insert" | "delete";

export interface EditOp {
  op: EditOpKind;
  source_pos: number;
  target_pos: number;
  source_char: string;
  target_char: string;
}

export interface WordAssignment {
  query_index: number;
  query_word: string;
  token_index: number;
  token_surface: string;
  token_normalized: string;
  distance: number;
  script: EditOp[];
}

export interface ContextLine {
  locus: string;
  text: string;
}

export interface MatchRecord {
  work_id: string;
  start_token: number;
  end_token: number;
  locus: string;
  total_distance: number;
  interval: number;
  mode: SearchModeName;
  surface_text: string;
  query_normalized: string;
  window_normalized: string;
  context: ContextLine[];
  script: EditOp[] | null;
  assignment: WordAssignment[] | null;
}

export interface SearchResponse {
  corpus_id: string;
  work_ids: string[] | null;
  query: string;
  query_normalized: string;
  mode: SearchModeName;
  max_distance: number;
  max_interval: number;
  context_lines: number;
  match_count: number;
  truncated: boolean;
  elapsed_ms: number;
  matches: MatchRecord[];
}

export interface WorkListing {
  work_id: string;
  author: string;
  title: string;
  lines: number;
}

export interface CorpusListing {
  corpus_id: string;
  works: WorkListing[];
}

export interface HealthResponse {
  status: string;
  corpus_count: number;
}

export interface ApiError {
  error: string;
  details?: { field: string; message: string }[];
}
