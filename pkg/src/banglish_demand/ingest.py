"""Load, merge, profile and clean scraped comment CSV exports."""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DataError
from .fileio import read_csv, write_csv

DEFAULT_NAME_COLUMN = "name"
DEFAULT_TEXT_COLUMN = "comment"


@dataclass(frozen=True)
class RawComment:
    source_file: str
    row_index: int
    commenter_name: str | None
    text: str | None


@dataclass(frozen=True)
class CleanComment:
    id: int
    commenter_name: str
    text: str


@dataclass(frozen=True)
class NullProfile:
    total_rows: int
    missing_name: int
    missing_text: int
    duplicate_rows: int

    def report(self) -> str:
        return (
            f"rows={self.total_rows} missing_name={self.missing_name} "
            f"missing_text={self.missing_text} duplicate_rows={self.duplicate_rows}"
        )


def _is_missing(value: str | None) -> bool:
    return value is None or not value.strip()


def merge_csv(
    paths: Sequence[str | os.PathLike],
    name_column: str = DEFAULT_NAME_COLUMN,
    text_column: str = DEFAULT_TEXT_COLUMN,
) -> list[RawComment]:
    """Concatenate scraper exports in path order, keeping only the name and text columns.

    An empty cell becomes ``None``; everything else is kept verbatim.
    """
    rows: list[RawComment] = []
    for path in paths:
        _, records = read_csv(path, required=(name_column, text_column))
        source = str(path)
        for i, rec in enumerate(records):
            # DictReader yields None for cells missing from short rows
            name = rec.get(name_column) or None
            text = rec.get(text_column) or None
            rows.append(RawComment(source, i, name, text))
    return rows


def profile(rows: Iterable[RawComment]) -> NullProfile:
    rows = list(rows)
    pairs = Counter((r.commenter_name, r.text) for r in rows)
    return NullProfile(
        total_rows=len(rows),
        missing_name=sum(_is_missing(r.commenter_name) for r in rows),
        missing_text=sum(_is_missing(r.text) for r in rows),
        duplicate_rows=sum(n - 1 for n in pairs.values()),
    )


def clean(rows: Iterable[RawComment | CleanComment]) -> list[CleanComment]:
    """Drop rows with a blank name or text, then keep the first of each exact (name, text) pair."""
    seen: set[tuple[str, str]] = set()
    out: list[CleanComment] = []
    for r in rows:
        name, text = r.commenter_name, r.text
        if _is_missing(name) or _is_missing(text):
            continue
        if (name, text) in seen:
            continue
        seen.add((name, text))
        out.append(CleanComment(len(out), name, text))
    return out


def write_comments(comments: Iterable[CleanComment], path: str | os.PathLike) -> None:
    write_csv(path, ["id", "name", "text"], ((c.id, c.commenter_name, c.text) for c in comments))


def read_comments(path: str | os.PathLike) -> list[CleanComment]:
    _, records = read_csv(path, required=("id", "name", "text"))
    try:
        return [CleanComment(int(r["id"]), r["name"], r["text"]) for r in records]
    except (TypeError, ValueError) as exc:
        raise DataError(f"{Path(path)}: bad comment row: {exc}") from exc
