"""Command-line interface: ingest, search, count, list, and serve.

Exit codes: 0 success, 1 usage error, 2 data error. The default store
directory comes from the FILUM_STORE environment variable when --store is
not given. Zero matches is a success: absence of parallels is an answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from filum.corpus import (
    Corpus,
    IngestError,
    StoreError,
    ingest_work,
    list_corpora,
    load_corpus,
    save_corpus,
)
from filum.normalize import NormalizerConfig
from filum.search import (
    Match,
    Query,
    SearchMode,
    UnknownWorkError,
    normalize_query,
    search,
)

USAGE_ERROR = 1
DATA_ERROR = 2

TSV_FIELDS = (
    "work_id",
    "locus",
    "surface_text",
    "total_distance",
    "interval",
    "mode",
    "summary",
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the CLI contract wants 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="filum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="ingest work files into a corpus store")
    ingest.add_argument("files", nargs="+", help="ingestion-format work files")
    ingest.add_argument("--corpus", required=True, help="corpus name")
    ingest.add_argument("--store", default=None, help="store root directory")
    ingest.add_argument(
        "--no-fold-v", action="store_true", help="keep v distinct from u"
    )
    ingest.add_argument(
        "--no-fold-j", action="store_true", help="keep j distinct from i"
    )
    ingest.add_argument(
        "--keep-diacritics", action="store_true", help="do not strip diacritics"
    )

    for name, helptext in (
        ("search", "search a corpus and print matches"),
        ("count", "search a corpus and print only the match count"),
    ):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--store", default=None, help="store root directory")
        cmd.add_argument("--corpus", required=True, help="corpus name")
        cmd.add_argument("--query", required=True, help="query phrase")
        cmd.add_argument(
            "--mode", choices=("fixed", "free"), default="fixed", help="search mode"
        )
        cmd.add_argument("--max-distance", type=int, default=2)
        cmd.add_argument("--max-interval", type=int, default=0)
        cmd.add_argument(
            "--works", default=None, help="comma-separated work ids to search"
        )
        if name == "search":
            cmd.add_argument(
                "--format", choices=("text", "tsv", "json"), default="text"
            )
            cmd.add_argument(
                "--context", type=int, default=1, help="context lines either side"
            )

    serve = sub.add_parser("serve", help="serve the HTTP API over a store")
    serve.add_argument("--store", default=None, help="store root directory")
    serve.add_argument(
        "--listen", default="127.0.0.1:8000", help="listen address host:port"
    )

    lst = sub.add_parser("list", help="list corpora and works in a store")
    lst.add_argument("--store", default=None, help="store root directory")
    return parser


def _store_dir(args: argparse.Namespace, parser: _Parser) -> str:
    store = args.store or os.environ.get("FILUM_STORE")
    if not store:
        parser.error("no store directory: pass --store or set FILUM_STORE")
    return store


def _load(store: str, corpus_name: str) -> Corpus:
    path = os.path.join(store, corpus_name)
    if not os.path.isfile(os.path.join(path, "manifest.json")):
        raise StoreError(f"no corpus named {corpus_name!r} in {store}")
    return load_corpus(path)


def _build_query(args: argparse.Namespace, corpus: Corpus) -> Query:
    words = normalize_query(args.query, corpus.normalization)
    if not words:
        raise IngestError(f"query {args.query!r} is empty after normalization")
    mode = SearchMode(args.mode)
    max_interval = args.max_interval
    if mode is SearchMode.FIXED and max_interval:
        print(
            "warning: --max-interval is ignored in fixed mode", file=sys.stderr
        )
        max_interval = 0
    work_filter = None
    if args.works:
        work_filter = frozenset(w.strip() for w in args.works.split(",") if w.strip())
    return Query(
        words=words,
        mode=mode,
        max_distance=args.max_distance,
        max_interval=max_interval,
        work_filter=work_filter,
    )


def _fixed_summary(match: Match) -> str:
    counts = match.script.op_counts() if match.script else {}
    return (
        f"match:{counts.get('match', 0)}"
        f" sub:{counts.get('substitute', 0)}"
        f" del:{counts.get('delete', 0)}"
        f" ins:{counts.get('insert', 0)}"
    )


def _free_summary(match: Match) -> str:
    return " ".join(
        f"{wa.query_word}->{wa.token_normalized}:{wa.distance}"
        for wa in match.assignment
    )


def match_summary(match: Match) -> str:
    if match.mode is SearchMode.FIXED:
        return _fixed_summary(match)
    return _free_summary(match)


def _print_text(matches: list[Match]) -> None:
    for m in matches:
        header = f"{m.locus}  d={m.total_distance}"
        if m.mode is SearchMode.FREE:
            header += f"  interval={m.interval}"
        print(header)
        print(f"  {m.surface_text}")
        print(f"  [{match_summary(m)}]")
        for locus, text in m.context:
            print(f"    {locus}\t{text}")
        print()
    print(f"{len(matches)} matches")


def _print_tsv(matches: list[Match]) -> None:
    for m in matches:
        row = (
            m.work_id,
            m.locus,
            m.surface_text,
            str(m.total_distance),
            str(m.interval),
            m.mode.value,
            match_summary(m),
        )
        print("\t".join(row))
    print(f"{len(matches)} matches", file=sys.stderr)


def _print_json(matches: list[Match]) -> None:
    payload = {
        "match_count": len(matches),
        "matches": [m.to_dict() for m in matches],
    }
    print(json.dumps(payload, ensure_ascii=False, indent=2))


def _cmd_ingest(args: argparse.Namespace, parser: _Parser) -> int:
    store = _store_dir(args, parser)
    config = NormalizerConfig(
        fold_v_to_u=not args.no_fold_v,
        fold_j_to_i=not args.no_fold_j,
        strip_diacritics=not args.keep_diacritics,
    )
    works = []
    seen_ids = set()
    for path in args.files:
        work = ingest_work(path, config)
        if work.work_id in seen_ids:
            raise IngestError(f"{path}: duplicate work id {work.work_id!r}")
        seen_ids.add(work.work_id)
        works.append(work)
    corpus = Corpus(args.corpus, tuple(works), config)
    save_corpus(corpus, os.path.join(store, args.corpus))
    print(
        f"{len(corpus.works)} works, {corpus.line_count} lines, "
        f"{corpus.token_count} tokens"
    )
    return 0


def _cmd_search(args: argparse.Namespace, parser: _Parser) -> int:
    corpus = _load(_store_dir(args, parser), args.corpus)
    query = _build_query(args, corpus)
    matches = search(corpus, query, context_radius=args.context)
    if args.format == "text":
        _print_text(matches)
    elif args.format == "tsv":
        _print_tsv(matches)
    else:
        _print_json(matches)
    return 0


def _cmd_count(args: argparse.Namespace, parser: _Parser) -> int:
    corpus = _load(_store_dir(args, parser), args.corpus)
    query = _build_query(args, corpus)
    print(len(search(corpus, query, context_radius=0)))
    return 0


def _cmd_serve(args: argparse.Namespace, parser: _Parser) -> int:
    import uvicorn

    from filum.service import create_app

    store = _store_dir(args, parser)
    app = create_app(store_dir=store)
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        parser.error(f"invalid listen address {args.listen!r} (expected host:port)")
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return 0


def _cmd_list(args: argparse.Namespace, parser: _Parser) -> int:
    store = _store_dir(args, parser)
    names = list_corpora(store)
    for name in names:
        corpus = load_corpus(os.path.join(store, name))
        print(f"{corpus.corpus_id}: {len(corpus.works)} works")
        for work in corpus.works:
            print(f"  {work.work_id}\t{work.author}, {work.title} ({len(work.lines)} lines)")
    if not names:
        print("no corpora")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "search": _cmd_search,
    "count": _cmd_count,
    "serve": _cmd_serve,
    "list": _cmd_list,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except (IngestError, StoreError, UnknownWorkError, ValueError) as exc:
        print(f"filum: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
