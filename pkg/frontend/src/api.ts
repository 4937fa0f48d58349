/** Thin fetch client for the filum service. */

import type {
  ApiError,
  CorpusListing,
  HealthResponse,
  SearchRequest,
  SearchResponse,
} from "./types.js";

export class ServiceError extends Error {
  readonly status: number;
  readonly details: ApiError["details"];

  constructor(status: number, body: ApiError) {
    super(body.error || `service error ${status}`);
    this.status = status;
    this.details = body.details;
  }
}

export class FilumClient {
  constructor(private readonly baseUrl: string) {}

  async health(): Promise<HealthResponse> {
    const resp = await fetch(`${this.baseUrl}/health`);
    return (await resp.json()) as HealthResponse;
  }

  async corpora(): Promise<CorpusListing[]> {
    const resp = await fetch(`${this.baseUrl}/corpora`);
    if (!resp.ok) {
      throw new ServiceError(resp.status, await resp.json());
    }
    return (await resp.json()) as CorpusListing[];
  }

  async search(request: SearchRequest, signal?: AbortSignal): Promise<SearchResponse> {
    const resp = await fetch(`${this.baseUrl}/search`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal,
    });
    if (!resp.ok) {
      throw new ServiceError(resp.status, (await resp.json()) as ApiError);
    }
    return (await resp.json()) as SearchResponse;
  }
}
