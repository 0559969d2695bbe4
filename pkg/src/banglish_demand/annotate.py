"""Entity-annotated datasets, seeded train/test splitting and NER training exports."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .catalog import DeviceCatalog
from .errors import DataError
from .fileio import atomic_write, read_csv, write_csv
from .ingest import CleanComment
from .matcher import MatcherConfig, correct_tokens, extract_entities
from .textprep import TokenizedComment

DEVICE_LABEL = "DEVICE"
POSITIVE, NEGATIVE = "Positive", "Negative"
_LABEL_VALUES = {"pos": POSITIVE, "neg": NEGATIVE}

LINES_CSV_HEADER = ["File", "Line", "Begin Offset", "End Offset", "Type"]

# each replaced by a single space so line offsets equal text offsets
_LINE_BREAKS = str.maketrans({c: " " for c in "\n\r\x0b\x0c\x1c\x1d\x1e\x85\u2028\u2029"})


@dataclass(frozen=True)
class EntitySpan:
    start_char: int
    end_char: int
    label: str = DEVICE_LABEL


@dataclass(frozen=True)
class LabeledComment:
    comment: CleanComment
    sentiment: str | None
    entities: tuple[EntitySpan, ...]

    @property
    def text(self) -> str:
        return self.comment.text


@dataclass(frozen=True)
class SplitConfig:
    train_fraction: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


def auto_annotate(
    comments: Iterable[CleanComment], catalog: DeviceCatalog, cfg: MatcherConfig = MatcherConfig()
) -> list[LabeledComment]:
    """Spell-correct each comment and tag device spans; comments without a device are dropped."""
    out = []
    for c in comments:
        result = correct_tokens(TokenizedComment.from_text(c.id, c.text), catalog, cfg)
        matches = extract_entities(result, c.id, catalog)
        if not matches:
            continue
        spans = tuple(EntitySpan(m.start, m.end) for m in matches)
        out.append(LabeledComment(replace(c, text=result.corrected_text), None, spans))
    return out


def read_labels(path: str | os.PathLike) -> dict[int, str]:
    """Sidecar CSV ``id,sentiment`` with sentiment in {pos, neg}."""
    _, records = read_csv(path, required=("id", "sentiment"))
    labels = {}
    for i, r in enumerate(records):
        value = (r["sentiment"] or "").strip().casefold()
        if value not in _LABEL_VALUES:
            raise DataError(f"{path}: row {i}: sentiment must be pos or neg, got {r['sentiment']!r}")
        try:
            labels[int(r["id"])] = _LABEL_VALUES[value]
        except ValueError as exc:
            raise DataError(f"{path}: row {i}: bad id {r['id']!r}") from exc
    return labels


def attach_labels(data: Iterable[LabeledComment], labels: dict[int, str]) -> tuple[list[LabeledComment], int]:
    """Set sentiment from ``labels``; returns the labeled rows and how many had no label."""
    kept, missing = [], 0
    for d in data:
        if d.comment.id in labels:
            kept.append(replace(d, sentiment=labels[d.comment.id]))
        else:
            missing += 1
    return kept, missing


def split(data: Sequence, cfg: SplitConfig = SplitConfig()) -> tuple[list, list]:
    """Seeded shuffle, then the first floor(train_fraction * n) items go to train."""
    n = len(data)
    if n < 2:
        raise ValueError(f"need at least 2 items to split, got {n}")
    # exact rational floor: 0.6 * n in binary floating point can land just under an integer
    n_train = int(Fraction(repr(cfg.train_fraction)) * n)
    order = np.random.default_rng(cfg.seed).permutation(n)
    train = [data[i] for i in order[:n_train]]
    test = [data[i] for i in order[n_train:]]
    return train, test


def _spans_json(d: LabeledComment) -> list:
    return [[s.start_char, s.end_char, s.label] for s in d.entities]


def export_offset_json(data: Iterable[LabeledComment], path: str | os.PathLike) -> None:
    """Write ``[{"text": ..., "entities": [[start, end, "DEVICE"], ...]}, ...]``."""
    payload = [{"text": d.text, "entities": _spans_json(d)} for d in data]
    with atomic_write(path) as fh:
        json.dump(payload, fh, ensure_ascii=False, separators=(",", ":"))


def load_offset_json(path: str | os.PathLike) -> list[tuple[str, tuple[EntitySpan, ...]]]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [(item["text"], tuple(EntitySpan(s, e, lab) for s, e, lab in item["entities"])) for item in payload]


def single_line(text: str) -> str:
    return text.translate(_LINE_BREAKS)


def export_lines_and_offsets(
    data: Iterable[LabeledComment], text_path: str | os.PathLike, csv_path: str | os.PathLike
) -> None:
    """One comment per line in ``text_path``; entity rows in ``csv_path``.

    Line numbers are 0-based and offsets are character positions within the
    line, end exclusive.
    """
    data = list(data)
    text_path = Path(text_path)
    with atomic_write(text_path, newline="\n") as fh:
        for d in data:
            fh.write(single_line(d.text) + "\n")
    rows = (
        (text_path.name, line, s.start_char, s.end_char, s.label)
        for line, d in enumerate(data)
        for s in d.entities
    )
    write_csv(csv_path, LINES_CSV_HEADER, rows)


def write_split(data: Iterable[LabeledComment], path: str | os.PathLike) -> None:
    """Split file: ``id,name,text,sentiment,entities`` with entities as ``start:end`` pairs."""
    rows = (
        (
            d.comment.id,
            d.comment.commenter_name,
            d.text,
            {POSITIVE: "pos", NEGATIVE: "neg"}.get(d.sentiment, ""),
            " ".join(f"{s.start_char}:{s.end_char}" for s in d.entities),
        )
        for d in data
    )
    write_csv(path, ["id", "name", "text", "sentiment", "entities"], rows)


def read_split(path: str | os.PathLike) -> list[LabeledComment]:
    _, records = read_csv(path, required=("id", "name", "text", "sentiment", "entities"))
    out = []
    try:
        for r in records:
            spans = tuple(
                EntitySpan(int(a), int(b)) for a, b in (p.split(":") for p in r["entities"].split())
            )
            sentiment = _LABEL_VALUES.get(r["sentiment"]) if r["sentiment"] else None
            out.append(LabeledComment(CleanComment(int(r["id"]), r["name"], r["text"]), sentiment, spans))
    except ValueError as exc:
        raise DataError(f"{path}: bad split row: {exc}") from exc
    return out
