"""Device gazetteer: brand-prefix stripping and marker removal over a scraped phone list."""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DataError
from .fileio import read_csv, write_csv

MIN_MODEL_CHARS = 7

_PARENTHESIZED = re.compile(r"\([^()]*\)")
_YEAR = re.compile(r"(?<!\S)(?:199\d|20[0-2]\d|2030)(?!\S)")
_SYMBOLS = re.compile("[™®©℠]")
_SPACES = re.compile(r"\s+")


@dataclass(frozen=True)
class CatalogEntry:
    brand: str
    full_model: str
    normalized_model: str


@dataclass(frozen=True)
class DeviceCatalog:
    entries: tuple[CatalogEntry, ...]
    max_model_tokens: int = field(init=False)

    def __post_init__(self):
        if not self.entries:
            raise DataError("device catalog is empty")
        keys = [e.normalized_model.casefold() for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("normalized model names must be unique after case folding")
        object.__setattr__(
            self, "max_model_tokens", max(len(e.normalized_model.split()) for e in self.entries)
        )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def models(self) -> list[str]:
        return [e.normalized_model for e in self.entries]

    @cached_property
    def by_key(self) -> dict[str, str]:
        """Case-folded model name -> catalog spelling."""
        return {e.normalized_model.casefold(): e.normalized_model for e in self.entries}

    @cached_property
    def order(self) -> dict[str, int]:
        return {e.normalized_model.casefold(): i for i, e in enumerate(self.entries)}

    @cached_property
    def by_length(self) -> dict[int, list[tuple[str, str]]]:
        """Case-folded length -> [(folded, model)] in catalog order."""
        buckets: dict[int, list[tuple[str, str]]] = {}
        for e in self.entries:
            key = e.normalized_model.casefold()
            buckets.setdefault(len(key), []).append((key, e.normalized_model))
        return buckets

    @classmethod
    def from_models(cls, models) -> "DeviceCatalog":
        """Build a catalog straight from model names (brand unknown); handy in tests."""
        entries, seen = [], set()
        for m in models:
            m = strip_markers(m)
            if m and m.casefold() not in seen:
                seen.add(m.casefold())
                entries.append(CatalogEntry("", m, m))
        return cls(tuple(entries))


def strip_markers(model: str) -> str:
    """Remove parenthesized notes, release years 1990-2030 and trademark symbols."""
    prev = None
    while prev != model:
        prev, model = model, _PARENTHESIZED.sub(" ", model)
    model = _SYMBOLS.sub("", model)
    model = _YEAR.sub(" ", model)
    return _SPACES.sub(" ", model).strip()


def normalize_model(brand: str, full_model: str) -> CatalogEntry:
    """Strip a leading brand name unless that would leave fewer than 7 characters.

    "Apple iPhone XS" becomes "iPhone XS"; "Nokia 3310" stays whole because
    "3310" is too short to stand on its own.
    """
    if not full_model or not full_model.strip():
        raise ValueError("full_model must be non-empty")
    brand = _SPACES.sub(" ", brand).strip()
    stripped = strip_markers(full_model) or _SPACES.sub(" ", full_model).strip()
    model = stripped
    prefix = brand.casefold() + " "
    # repeated until stable so the result is a fixed point
    while brand and model.casefold().startswith(prefix):
        rest = model[len(prefix):].strip()
        if len(rest) < MIN_MODEL_CHARS:
            break
        model = rest
    return CatalogEntry(brand, stripped, model)


def load_catalog(
    path: str | os.PathLike, brand_column: str = "brand", model_column: str = "model"
) -> DeviceCatalog:
    _, records = read_csv(path, required=(brand_column, model_column))
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        model = rec.get(model_column) or ""
        if not model.strip():
            raise DataError(f"{path}: row {i} has an empty {model_column!r}")
        entry = normalize_model(rec.get(brand_column) or "", model)
        key = entry.normalized_model.casefold()
        if key in seen:
            continue
        seen.add(key)
        entries.append(entry)
    if not entries:
        raise DataError(f"{path}: device catalog is empty")
    return DeviceCatalog(tuple(entries))


def write_catalog(catalog: DeviceCatalog, path: str | os.PathLike) -> None:
    write_csv(
        path,
        ["brand", "full_model", "normalized_model"],
        ((e.brand, e.full_model, e.normalized_model) for e in catalog.entries),
    )


def read_catalog(path: str | os.PathLike) -> DeviceCatalog:
    """Reload a catalog written by :func:`write_catalog` without renormalizing."""
    _, records = read_csv(path, required=("brand", "full_model", "normalized_model"))
    entries = tuple(CatalogEntry(r["brand"], r["full_model"], r["normalized_model"]) for r in records)
    if not entries:
        raise DataError(f"{path}: device catalog is empty")
    try:
        return DeviceCatalog(entries)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc
