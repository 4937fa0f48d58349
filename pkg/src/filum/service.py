"""HTTP API over one or more loaded corpora.

Read-only JSON API consumed by the web UI and other clients. Corpora are
loaded once at startup and shared immutably across requests; every response
is a pure function of the request, so repeated calls are byte-identical.
"""

from __future__ import annotations

import os
import time
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from filum.corpus import Corpus, StoreError, list_corpora, load_corpus
from filum.search import Query, SearchMode, UnknownWorkError, normalize_query, search

DEFAULT_MATCH_CAP = 5000


class SearchRequest(BaseModel):
    corpus_id: str
    work_ids: list[str] | None = None
    query: str
    mode: Literal["fixed", "free"] = "fixed"
    max_distance: int = Field(default=2, ge=0)
    max_interval: int = Field(default=0, ge=0)
    context_lines: int = Field(default=1, ge=0)


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message, **extra})


def load_store(store_dir: str) -> dict[str, Corpus]:
    """Load every corpus under a store root, keyed by corpus id."""
    corpora = {}
    for name in list_corpora(store_dir):
        corpus = load_corpus(os.path.join(store_dir, name))
        corpora[corpus.corpus_id] = corpus
    return corpora


def create_app(
    store_dir: str | None = None,
    corpora: dict[str, Corpus] | None = None,
    max_matches: int = DEFAULT_MATCH_CAP,
) -> FastAPI:
    """Build the service app.

    Pass ``store_dir`` to load from disk (raises StoreError when the
    directory is unusable), or ``corpora`` directly. With neither, the app
    starts unloaded and reports 503 from /health.
    """
    if store_dir is not None:
        if corpora is not None:
            raise ValueError("pass either store_dir or corpora, not both")
        if not os.path.isdir(store_dir):
            raise StoreError(f"store directory {store_dir!r} does not exist")
        corpora = load_store(store_dir)

    app = FastAPI(title="filum", version="0.1.0")
    app.state.corpora = corpora
    app.state.max_matches = max_matches
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        details = [
            {
                "field": ".".join(str(p) for p in err["loc"] if p != "body"),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        fields = ", ".join(d["field"] for d in details) or "request"
        return _error(400, f"invalid request: {fields}", details=details)

    @app.get("/health")
    async def health():
        loaded = app.state.corpora is not None
        body = {
            "status": "ok" if loaded else "loading",
            "corpus_count": len(app.state.corpora) if loaded else 0,
        }
        return JSONResponse(status_code=200 if loaded else 503, content=body)

    @app.get("/corpora")
    async def corpora_listing():
        listing = []
        for corpus_id in sorted(app.state.corpora or {}):
            corpus = app.state.corpora[corpus_id]
            listing.append(
                {
                    "corpus_id": corpus.corpus_id,
                    "works": [
                        {
                            "work_id": w.work_id,
                            "author": w.author,
                            "title": w.title,
                            "lines": len(w.lines),
                        }
                        for w in corpus.works
                    ],
                }
            )
        return listing

    @app.post("/search")
    async def run_search(request: SearchRequest):
        if not app.state.corpora or request.corpus_id not in app.state.corpora:
            return _error(404, f"unknown corpus {request.corpus_id!r}")
        corpus = app.state.corpora[request.corpus_id]
        words = normalize_query(request.query, corpus.normalization)
        if not words:
            return _error(
                400, f"query {request.query!r} is empty after normalization"
            )
        try:
            query = Query(
                words=words,
                mode=SearchMode(request.mode),
                max_distance=request.max_distance,
                max_interval=request.max_interval if request.mode == "free" else 0,
                work_filter=frozenset(request.work_ids) if request.work_ids else None,
            )
        except ValueError as exc:
            return _error(400, str(exc))
        started = time.perf_counter()
        try:
            matches = search(corpus, query, context_radius=request.context_lines)
        except UnknownWorkError as exc:
            return _error(404, str(exc))
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        cap = app.state.max_matches
        truncated = len(matches) > cap
        if truncated:
            matches = matches[:cap]
        return {
            "corpus_id": request.corpus_id,
            "work_ids": sorted(query.work_filter) if query.work_filter else None,
            "query": request.query,
            "query_normalized": " ".join(words),
            "mode": query.mode.value,
            "max_distance": query.max_distance,
            "max_interval": query.max_interval,
            "context_lines": request.context_lines,
            "match_count": len(matches),
            "truncated": truncated,
            "elapsed_ms": round(elapsed_ms, 3),
            "matches": [m.to_dict() for m in matches],
        }

    return app
