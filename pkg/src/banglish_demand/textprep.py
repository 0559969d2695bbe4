"""Tokenization and case normalization shared by the matcher, annotator and classifier."""
from __future__ import annotations

import re
from dataclasses import dataclass

EDGE_PUNCTUATION = ".,!?;:()[]\"'"

_NON_SPACE = re.compile(r"\S+")

Token = tuple[str, int, int]


@dataclass(frozen=True)
class TokenizedComment:
    comment_id: int
    text: str
    tokens: tuple[Token, ...]

    @classmethod
    def from_text(cls, comment_id: int, text: str) -> "TokenizedComment":
        return cls(comment_id, text, tuple(word_tokenize(text)))


def word_tokenize(text: str) -> list[Token]:
    """Split on whitespace and trim edge punctuation.

    Offsets point at the trimmed token, so ``text[start:end] == token``.
    Interior punctuation (hyphens, dots in "8.1") is kept.
    """
    tokens = []
    for m in _NON_SPACE.finditer(text):
        raw = m.group()
        left = len(raw) - len(raw.lstrip(EDGE_PUNCTUATION))
        right = len(raw.rstrip(EDGE_PUNCTUATION))
        if right <= left:
            continue
        start = m.start() + left
        tokens.append((raw[left:right], start, m.start() + right))
    return tokens


def normalize_case(text: str) -> str:
    return text.casefold()
