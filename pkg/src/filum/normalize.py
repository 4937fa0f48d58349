"""Tokenization and orthographic normalization of Latin-script text.

Alignment operates on a canonical character stream: lowercase a-z with the
classical u/v and i/j mergers applied, diacritics stripped, everything else
dropped. The policy is configurable per corpus so an edition with a different
orthography can opt out of the mergers.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

_CHUNK = re.compile(r"\S+")
_LETTERS = re.compile(r"[a-z]+")


@dataclass(frozen=True)
class NormalizerConfig:
    """Orthographic policy applied at ingest and to every query."""

    fold_v_to_u: bool = True
    fold_j_to_i: bool = True
    strip_diacritics: bool = True

    def to_dict(self) -> dict:
        return {
            "fold_v_to_u": self.fold_v_to_u,
            "fold_j_to_i": self.fold_j_to_i,
            "strip_diacritics": self.strip_diacritics,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizerConfig":
        return cls(
            fold_v_to_u=bool(data.get("fold_v_to_u", True)),
            fold_j_to_i=bool(data.get("fold_j_to_i", True)),
            strip_diacritics=bool(data.get("strip_diacritics", True)),
        )


DEFAULT_CONFIG = NormalizerConfig()


@dataclass(frozen=True, slots=True)
class Token:
    """One word occurrence in a work.

    ``surface`` is the whitespace-delimited slice of the source line
    (punctuation included); ``normalized`` is the canonical form used for
    alignment. ``char_span`` is the (start, end) offset of the surface slice
    within its source line.
    """

    surface: str
    normalized: str
    work_id: str
    line_index: int
    token_index: int
    char_span: tuple[int, int]


def normalize_word(raw: str, config: NormalizerConfig = DEFAULT_CONFIG) -> str:
    """Return the canonical lowercase form of one word, or "" if nothing survives.

    Lowercases, folds v->u and j->i, strips diacritics to their base letters,
    and drops every non-alphabetic character. Idempotent by construction: the
    output alphabet is a subset of the input alphabet the rules leave fixed.
    """
    text = raw
    if config.strip_diacritics:
        decomposed = unicodedata.normalize("NFKD", text)
        text = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    text = text.lower()
    if config.fold_v_to_u:
        text = text.replace("v", "u")
    if config.fold_j_to_i:
        text = text.replace("j", "i")
    return "".join(_LETTERS.findall(text))


def tokenize_line(
    line: str,
    work_id: str,
    line_index: int,
    start_token_index: int = 0,
    config: NormalizerConfig = DEFAULT_CONFIG,
) -> list[Token]:
    """Split a line on whitespace and emit normalized tokens left to right.

    Chunks whose normalized form is empty (pure punctuation, numerals) are
    dropped. ``start_token_index`` continues a work-wide token numbering.
    """
    tokens: list[Token] = []
    index = start_token_index
    for chunk in _CHUNK.finditer(line):
        normalized = normalize_word(chunk.group(), config)
        if not normalized:
            continue
        tokens.append(
            Token(
                surface=chunk.group(),
                normalized=normalized,
                work_id=work_id,
                line_index=line_index,
                token_index=index,
                char_span=(chunk.start(), chunk.end()),
            )
        )
        index += 1
    return tokens
