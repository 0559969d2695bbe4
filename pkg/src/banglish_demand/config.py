"""Pipeline configuration: one JSON file, paths resolved relative to it."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .annotate import SplitConfig
from .errors import ConfigError
from .matcher import MatcherConfig
from .sentiment import SentimentConfig


@dataclass(frozen=True)
class ClientConfig:
    enabled: bool = False
    endpoint: str | None = None
    timeout: float = 5.0


@dataclass(frozen=True)
class PipelineConfig:
    comments: tuple[Path, ...]
    catalog: Path
    output_dir: Path
    labels: Path | None = None
    lexicon: Path | None = None
    transliteration: Path | None = None
    name_column: str = "name"
    text_column: str = "comment"
    brand_column: str = "brand"
    model_column: str = "model"
    matcher: MatcherConfig = MatcherConfig()
    sentiment: SentimentConfig = SentimentConfig()
    split: SplitConfig = SplitConfig()
    client: ClientConfig = ClientConfig()
    top_n: int = 10
    threads: int = 1
    seed: int = 0
    source: Path | None = field(default=None, compare=False)

    def out(self, name: str) -> Path:
        return self.output_dir / name


def _section(raw: dict, key: str, cls, extra: dict | None = None):
    values = dict(raw.get(key) or {})
    if extra:
        for k, v in extra.items():
            values.setdefault(k, v)
    known = {f.name for f in fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown keys in {key!r}: {', '.join(sorted(unknown))}")
    try:
        return cls(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {key!r} settings: {exc}") from exc


def load_config(
    path: str | os.PathLike,
    seed: int | None = None,
    threads: int | None = None,
    output_dir: str | os.PathLike | None = None,
) -> PipelineConfig:
    """Read the JSON config; explicit arguments override file values, ``seed`` overrides every seed."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")

    base = path.parent
    inputs = raw.get("inputs") or {}

    def resolve(value):
        return None if value is None else (base / value)

    for key in ("comments", "catalog"):
        if key not in inputs:
            raise ConfigError(f"missing config key inputs.{key}")
    comments = inputs["comments"]
    if isinstance(comments, str):
        comments = [comments]
    root_seed = int(raw.get("seed", 0)) if seed is None else seed
    if output_dir is None:
        if "output_dir" not in raw:
            raise ConfigError("missing config key output_dir")
        output_dir = resolve(raw["output_dir"])
    columns = raw.get("columns") or {}

    sentiment = _section(raw, "sentiment", SentimentConfig, {"seed": root_seed})
    split = _section(raw, "split", SplitConfig, {"seed": root_seed})
    if seed is not None:
        sentiment = replace(sentiment, seed=seed)
        split = replace(split, seed=seed)
    cfg = PipelineConfig(
        comments=tuple(resolve(c) for c in comments),
        catalog=resolve(inputs["catalog"]),
        output_dir=Path(output_dir),
        labels=resolve(inputs.get("labels")),
        lexicon=resolve(inputs.get("lexicon")),
        transliteration=resolve(inputs.get("transliteration")),
        name_column=columns.get("name", "name"),
        text_column=columns.get("comment", "comment"),
        brand_column=columns.get("brand", "brand"),
        model_column=columns.get("model", "model"),
        matcher=_section(raw, "matcher", MatcherConfig),
        sentiment=sentiment,
        split=split,
        client=_section(raw, "client", ClientConfig),
        top_n=int((raw.get("report") or {}).get("top_n", 10)),
        threads=int(raw.get("threads", 1)) if threads is None else threads,
        seed=root_seed,
        source=path,
    )
    if cfg.top_n < 1:
        raise ConfigError("report.top_n must be >= 1")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if cfg.client.enabled and not cfg.client.endpoint:
        raise ConfigError("client.enabled requires client.endpoint")
    return cfg
