"""Ingestion, validation, persistence, and retrieval of line-addressed works.

Ingestion format (one work per UTF-8 file, LF or CRLF):

    author: Vergil
    title: Aeneid
    abbreviation: Aen.
    id: aeneid

    6.624<TAB>ausi omnes immane nefas ausoque potiti.

A header of lowercase ``key: value`` lines, a blank line, then one body line
per text line as ``locus<TAB>text``. Loci must be unique within a work.

On disk a corpus is a directory holding ``manifest.json`` plus one JSON
record per work under ``works/``. Records are written canonically (sorted
keys, two-space indent, trailing newline), so identical corpora serialize to
identical bytes; the manifest carries a SHA-256 checksum for every record and
a format version tag, and loading refuses anything that fails verification.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import shutil
from dataclasses import dataclass

from filum.normalize import DEFAULT_CONFIG, NormalizerConfig, Token, tokenize_line

FORMAT_TAG = "filum-store/1"
MANIFEST_NAME = "manifest.json"
WORKS_DIR = "works"

_HEADER_KEYS = ("id", "author", "title", "abbreviation")
_SAFE_ID = re.compile(r"[A-Za-z0-9._-]+\Z")


class IngestError(ValueError):
    """A document does not conform to the ingestion format."""


class StoreError(RuntimeError):
    """The on-disk store is missing, unreadable, or the wrong version."""


class IntegrityError(StoreError):
    """Stored bytes do not match their recorded checksum."""


@dataclass(frozen=True)
class Work:
    """A line-addressed text with metadata and its derived token stream."""

    work_id: str
    author: str
    title: str
    abbreviation: str
    lines: tuple[tuple[str, str], ...]
    tokens: tuple[Token, ...]

    @classmethod
    def from_lines(
        cls,
        work_id: str,
        author: str,
        title: str,
        abbreviation: str,
        lines: tuple[tuple[str, str], ...],
        config: NormalizerConfig = DEFAULT_CONFIG,
    ) -> "Work":
        tokens: list[Token] = []
        for line_index, (_, text) in enumerate(lines):
            tokens.extend(
                tokenize_line(text, work_id, line_index, len(tokens), config)
            )
        return cls(work_id, author, title, abbreviation, tuple(lines), tuple(tokens))


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of works sharing one normalization policy."""

    corpus_id: str
    works: tuple[Work, ...]
    normalization: NormalizerConfig = DEFAULT_CONFIG

    def work(self, work_id: str) -> Work:
        for work in self.works:
            if work.work_id == work_id:
                return work
        raise KeyError(work_id)

    @property
    def line_count(self) -> int:
        return sum(len(w.lines) for w in self.works)

    @property
    def token_count(self) -> int:
        return sum(len(w.tokens) for w in self.works)


def parse_work_document(
    text: str,
    source: str = "<string>",
    config: NormalizerConfig = DEFAULT_CONFIG,
) -> Work:
    """Parse one ingestion-format document into a validated Work."""
    raw_lines = [line.rstrip("\r") for line in text.split("\n")]
    header: dict[str, str] = {}
    body_start = None
    for number, line in enumerate(raw_lines, start=1):
        if line.strip() == "":
            body_start = number
            break
        if ":" not in line:
            raise IngestError(f"{source}:{number}: header line missing ':'")
        key, _, value = line.partition(":")
        key = key.strip()
        if key not in _HEADER_KEYS:
            raise IngestError(f"{source}:{number}: unknown header key {key!r}")
        if key in header:
            raise IngestError(f"{source}:{number}: duplicate header key {key!r}")
        header[key] = value.strip()
    if body_start is None:
        raise IngestError(f"{source}: missing blank line after header")
    missing = [key for key in _HEADER_KEYS if key not in header]
    if missing:
        raise IngestError(f"{source}: missing header key(s): {', '.join(missing)}")
    work_id = header["id"]
    if not _SAFE_ID.match(work_id):
        raise IngestError(
            f"{source}: work id {work_id!r} may only contain letters, digits, '.', '_', '-'"
        )

    lines: list[tuple[str, str]] = []
    seen: set[str] = set()
    for number, line in enumerate(raw_lines[body_start:], start=body_start + 1):
        if line.strip() == "":
            continue
        if "\t" not in line:
            raise IngestError(f"{source}:{number}: body line missing TAB separator")
        locus, _, line_text = line.partition("\t")
        if locus in seen:
            raise IngestError(f"{source}:{number}: duplicate locus {locus!r}")
        seen.add(locus)
        lines.append((locus, line_text))
    if not lines:
        raise IngestError(f"{source}: document has no body lines")
    return Work.from_lines(
        work_id,
        header["author"],
        header["title"],
        header["abbreviation"],
        tuple(lines),
        config,
    )


def ingest_work(path: str, config: NormalizerConfig = DEFAULT_CONFIG) -> Work:
    """Read and parse one ingestion-format file."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path}: not valid UTF-8 ({exc})") from None
    return parse_work_document(text, source=os.path.basename(path), config=config)


def _canonical_bytes(obj: object) -> bytes:
    return (json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode(
        "utf-8"
    )


def save_corpus(corpus: Corpus, store_path: str) -> None:
    """Write the corpus to ``store_path`` (created if needed, replaced if present)."""
    works_path = os.path.join(store_path, WORKS_DIR)
    if os.path.isdir(works_path):
        shutil.rmtree(works_path)
    os.makedirs(works_path, exist_ok=True)
    entries = []
    for work in corpus.works:
        record = {
            "work_id": work.work_id,
            "author": work.author,
            "title": work.title,
            "abbreviation": work.abbreviation,
            "lines": [[locus, text] for locus, text in work.lines],
        }
        blob = _canonical_bytes(record)
        rel = f"{WORKS_DIR}/{work.work_id}.json"
        with open(os.path.join(store_path, rel), "wb") as fh:
            fh.write(blob)
        entries.append(
            {
                "work_id": work.work_id,
                "path": rel,
                "sha256": hashlib.sha256(blob).hexdigest(),
            }
        )
    manifest = {
        "format": FORMAT_TAG,
        "corpus_id": corpus.corpus_id,
        "normalization": corpus.normalization.to_dict(),
        "works": entries,
    }
    with open(os.path.join(store_path, MANIFEST_NAME), "wb") as fh:
        fh.write(_canonical_bytes(manifest))


def load_corpus(store_path: str) -> Corpus:
    """Load a corpus, verifying format version and per-work checksums."""
    manifest_path = os.path.join(store_path, MANIFEST_NAME)
    if not os.path.isfile(manifest_path):
        raise StoreError(f"no corpus found at {store_path}")
    with open(manifest_path, "rb") as fh:
        try:
            manifest = json.loads(fh.read().decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise IntegrityError(f"{manifest_path}: manifest unreadable ({exc})") from None
    tag = manifest.get("format")
    if tag != FORMAT_TAG:
        raise StoreError(
            f"{manifest_path}: unsupported store format {tag!r} (expected {FORMAT_TAG!r})"
        )
    config = NormalizerConfig.from_dict(manifest.get("normalization", {}))
    works: list[Work] = []
    for entry in manifest["works"]:
        record_path = os.path.join(store_path, entry["path"])
        try:
            with open(record_path, "rb") as fh:
                blob = fh.read()
        except OSError as exc:
            raise StoreError(f"{record_path}: unreadable work record ({exc})") from None
        digest = hashlib.sha256(blob).hexdigest()
        if digest != entry["sha256"]:
            raise IntegrityError(
                f"{record_path}: checksum mismatch (store is corrupt)"
            )
        record = json.loads(blob.decode("utf-8"))
        works.append(
            Work.from_lines(
                record["work_id"],
                record["author"],
                record["title"],
                record["abbreviation"],
                tuple((locus, text) for locus, text in record["lines"]),
                config,
            )
        )
    return Corpus(manifest["corpus_id"], tuple(works), config)


def list_corpora(store_root: str) -> list[str]:
    """Corpus ids available under a store root, sorted for stable listings."""
    if not os.path.isdir(store_root):
        return []
    found = []
    for name in sorted(os.listdir(store_root)):
        if os.path.isfile(os.path.join(store_root, name, MANIFEST_NAME)):
            found.append(name)
    return found


def context_lines(
    work: Work, token_span: tuple[int, int], radius: int
) -> list[tuple[str, str]]:
    """Lines covering the span plus ``radius`` lines either side, clamped."""
    start, end = token_span
    if not (0 <= start <= end < len(work.tokens)):
        raise ValueError(f"token span {token_span} invalid for work {work.work_id!r}")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    first = work.tokens[start].line_index
    last = work.tokens[end].line_index
    lo = max(0, first - radius)
    hi = min(len(work.lines) - 1, last + radius)
    return [work.lines[i] for i in range(lo, hi + 1)]


def locus_label(work: Work, start: int, end: int) -> str:
    """Human-readable line reference for a token span, e.g. "Aen. 6.624"."""
    name = work.abbreviation or work.work_id
    first = work.lines[work.tokens[start].line_index][0]
    last = work.lines[work.tokens[end].line_index][0]
    if first == last:
        return f"{name} {first}"
    return f"{name} {first}-{last}"


def span_surface(work: Work, start: int, end: int) -> str:
    """Original spelling of a token span, space-joined."""
    return " ".join(tok.surface for tok in work.tokens[start : end + 1])
