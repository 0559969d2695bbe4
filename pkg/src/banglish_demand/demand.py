"""Per-device demand: join entities, sentiment and gender, rank, and render."""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .annotate import NEGATIVE, POSITIVE
from .catalog import DeviceCatalog
from .errors import DataError
from .fileio import atomic_write, read_csv, write_csv
from .gender import Gender, TransliterationClient, predict_gender
from .ingest import CleanComment
from .matcher import MatcherConfig, correct_all, extract_entities
from .sentiment import SentimentModel, predict_proba

REPORT_HEADER = ["device", "pos_male", "pos_female", "pos_unknown", "neg_male", "neg_female", "neg_unknown", "demand_score"]

MALE_COLOR = "#1f77b4"
FEMALE_COLOR = "#ff7f0e"
UNKNOWN_COLOR = "#9e9e9e"


@dataclass(frozen=True)
class AnalyzedComment:
    comment_id: int
    devices: tuple[str, ...]
    sentiment: str
    probability: float
    gender: Gender


@dataclass(frozen=True)
class DemandRecord:
    device: str
    pos_male: int = 0
    pos_female: int = 0
    pos_unknown: int = 0
    neg_male: int = 0
    neg_female: int = 0
    neg_unknown: int = 0

    @property
    def demand_score(self) -> int:
        return self.pos_male + self.pos_female + self.pos_unknown

    @property
    def mentions(self) -> int:
        return self.demand_score + self.neg_male + self.neg_female + self.neg_unknown

    def row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)] + [self.demand_score]


def analyze(
    comments: Sequence[CleanComment],
    catalog: DeviceCatalog,
    matcher_cfg: MatcherConfig,
    model: SentimentModel,
    lexicon: Mapping[str, Gender],
    client: TransliterationClient | None = None,
    threads: int = 1,
) -> list[AnalyzedComment]:
    """Comments that mention no device are dropped."""
    corrected = correct_all(((c.id, c.text) for c in comments), catalog, matcher_cfg, threads)
    kept = []
    for c, result in zip(comments, corrected):
        devices = tuple(dict.fromkeys(m.device for m in extract_entities(result, c.id, catalog)))
        if devices:
            kept.append((c, result.corrected_text, devices))
    probs = predict_proba(model, [text for _, text, _ in kept])
    out = []
    for (c, _, devices), p in zip(kept, probs.tolist()):
        sentiment = POSITIVE if p >= model.decision_threshold else NEGATIVE
        out.append(AnalyzedComment(c.id, devices, sentiment, p, predict_gender(c.commenter_name, lexicon, client)))
    return out


_COLUMN = {
    (POSITIVE, Gender.MALE): "pos_male",
    (POSITIVE, Gender.FEMALE): "pos_female",
    (POSITIVE, Gender.UNKNOWN): "pos_unknown",
    (NEGATIVE, Gender.MALE): "neg_male",
    (NEGATIVE, Gender.FEMALE): "neg_female",
    (NEGATIVE, Gender.UNKNOWN): "neg_unknown",
}


def rank_key(r: DemandRecord):
    return (-r.demand_score, -r.mentions, r.device)


def aggregate(analyzed: Iterable[AnalyzedComment]) -> list[DemandRecord]:
    """Tally each device mention under its comment's sentiment and gender, ranked by positive count."""
    tallies: dict[str, Counter] = {}
    for a in analyzed:
        column = _COLUMN[(a.sentiment, Gender(a.gender))]
        for device in dict.fromkeys(a.devices):
            tallies.setdefault(device, Counter())[column] += 1
    records = [DemandRecord(device, **counts) for device, counts in tallies.items()]
    return sorted(records, key=rank_key)


def emit_report(records: Sequence[DemandRecord], path: str | os.PathLike, format: str = "csv") -> None:
    if format == "csv":
        write_csv(path, REPORT_HEADER, (r.row() for r in records))
    elif format == "json":
        payload = [dict(asdict(r), demand_score=r.demand_score) for r in records]
        with atomic_write(path) as fh:
            json.dump(payload, fh, ensure_ascii=False, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown report format {format!r}")


def load_report(path: str | os.PathLike) -> list[DemandRecord]:
    path = str(path)
    if path.endswith(".json"):
        with open(path, encoding="utf-8") as fh:
            items = json.load(fh)
    else:
        _, items = read_csv(path, required=tuple(REPORT_HEADER))
    out = []
    for item in items:
        counts = {k: int(item[k]) for k in REPORT_HEADER[1:-1]}
        rec = DemandRecord(item["device"], **counts)
        if rec.demand_score != int(item["demand_score"]):
            raise DataError(f"{path}: demand_score mismatch for {rec.device!r}")
        out.append(rec)
    return out


def emit_chart_svg(
    records: Sequence[DemandRecord],
    path: str | os.PathLike,
    top_n: int = 10,
    bar_width: float = 480.0,
) -> None:
    """Horizontal stacked bars of positive mentions: male blue, female orange, unknown gray.

    Bar length is proportional to demand_score (counts, not percentages).
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    shown = list(records[:top_n])
    label_w, bar_h, gap, top, left_pad = 180.0, 22.0, 8.0, 40.0, 10.0
    width = label_w + bar_width + 60.0
    height = top + max(len(shown), 1) * (bar_h + gap) + 40.0
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}" font-family="sans-serif" font-size="12">',
        f'<text x="{left_pad:.0f}" y="20" font-size="14" font-weight="bold">Positive demand by gender</text>',
    ]
    if not shown:
        out.append(f'<text class="no-data" x="{width / 2:.1f}" y="{top + 20:.1f}" text-anchor="middle">no data</text>')
    else:
        peak = max(r.demand_score for r in shown)
        scale = bar_width / peak if peak else 0.0
        for i, r in enumerate(shown):
            y = top + i * (bar_h + gap)
            out.append(f'<g class="bar" data-device="{escape(r.device, {chr(34): "&quot;"})}" data-score="{r.demand_score}">')
            out.append(
                f'<text x="{label_w - 6:.1f}" y="{y + bar_h * 0.7:.1f}" text-anchor="end">{escape(r.device)}</text>'
            )
            x = label_w
            for cls, count, color in (
                ("male", r.pos_male, MALE_COLOR),
                ("female", r.pos_female, FEMALE_COLOR),
                ("unknown", r.pos_unknown, UNKNOWN_COLOR),
            ):
                w = count * scale
                out.append(
                    f'<rect class="{cls}" x="{x:.3f}" y="{y:.1f}" width="{w:.3f}" height="{bar_h:.1f}" fill="{color}"/>'
                )
                x += w
            out.append(f'<text x="{x + 4:.1f}" y="{y + bar_h * 0.7:.1f}">{r.demand_score}</text>')
            out.append("</g>")
    legend_y = height - 18
    for k, (name, color) in enumerate((("Male", MALE_COLOR), ("Female", FEMALE_COLOR), ("Unknown", UNKNOWN_COLOR))):
        lx = label_w + k * 90
        out.append(f'<rect x="{lx:.0f}" y="{legend_y - 10:.0f}" width="12" height="12" fill="{color}"/>')
        out.append(f'<text x="{lx + 16:.0f}" y="{legend_y:.0f}">{name}</text>')
    out.append("</svg>")
    with atomic_write(path, newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


def write_analyzed(analyzed: Iterable[AnalyzedComment], path: str | os.PathLike) -> None:
    rows = (
        (a.comment_id, "|".join(a.devices), a.sentiment, f"{a.probability:.6f}", Gender(a.gender).value)
        for a in analyzed
    )
    write_csv(path, ["comment_id", "devices", "sentiment", "probability", "gender"], rows)
