"""Commenter gender from display names.

Honorifics are stripped, the first name is looked up in a lexicon, and on a
miss the name is transliterated to Bangla script and looked up again.
"""
from __future__ import annotations

import csv
import enum
import json
import logging
import os
import urllib.request
from importlib import resources
from typing import Mapping, Protocol

from .errors import DataError
from .fileio import read_csv
from .textprep import normalize_case, word_tokenize

log = logging.getLogger(__name__)

HONORIFICS = frozenset({"md", "mohammad", "phd", "dr", "mrs", "miss", "engr", "mr", "mst"})


class Gender(str, enum.Enum):
    MALE = "Male"
    FEMALE = "Female"
    UNKNOWN = "Unknown"


class NoFirstName(ValueError):
    """The name has nothing left once honorifics are removed."""


class TransliterationClient(Protocol):
    def transliterate(self, name: str) -> str: ...


class IdentityTransliterator:
    def transliterate(self, name: str) -> str:
        return name


class OfflineTransliterator:
    """Lookup-table transliteration; unknown names come back unchanged."""

    def __init__(self, table: Mapping[str, str]):
        self.table = {normalize_case(k): v for k, v in table.items()}

    def transliterate(self, name: str) -> str:
        return self.table.get(normalize_case(name), name)

    @classmethod
    def from_csv(cls, path: str | os.PathLike | None = None) -> "OfflineTransliterator":
        if path is None:
            with resources.files(__package__).joinpath("data/transliteration.csv").open(encoding="utf-8") as fh:
                records = list(csv.DictReader(fh))
        else:
            _, records = read_csv(path, required=("romanized", "native"))
        return cls({r["romanized"]: r["native"] for r in records})


class HttpTransliterator:
    """Client for a JSON service: POST ``{"text": ...}``, reply ``{"translated": ...}``."""

    def __init__(self, endpoint: str, timeout: float = 5.0):
        self.endpoint = endpoint
        self.timeout = timeout

    def transliterate(self, name: str) -> str:
        body = json.dumps({"text": name}).encode("utf-8")
        req = urllib.request.Request(
            self.endpoint, data=body, headers={"Content-Type": "application/json"}, method="POST"
        )
        with urllib.request.urlopen(req, timeout=self.timeout) as resp:
            reply = json.loads(resp.read().decode("utf-8"))
        translated = reply["translated"]
        if not isinstance(translated, str):
            raise ValueError("translated field is not a string")
        return translated


def load_lexicon(path: str | os.PathLike | None = None) -> dict[str, Gender]:
    """Read a ``name,gender`` CSV (gender male/female). ``None`` loads the bundled lexicon."""
    if path is None:
        with resources.files(__package__).joinpath("data/name_gender.csv").open(encoding="utf-8") as fh:
            records = list(csv.DictReader(fh))
        path = "<bundled name_gender.csv>"
    else:
        _, records = read_csv(path, required=("name", "gender"))
    lexicon = {}
    for i, r in enumerate(records):
        key = normalize_case((r["name"] or "").strip())
        value = normalize_case((r["gender"] or "").strip())
        if not key or len(key.split()) != 1:
            raise DataError(f"{path}: row {i}: name must be a single token")
        if value not in ("male", "female"):
            raise DataError(f"{path}: row {i}: gender must be male or female, got {r['gender']!r}")
        lexicon[key] = Gender.MALE if value == "male" else Gender.FEMALE
    return lexicon


def _is_honorific(token: str) -> bool:
    return normalize_case(token.rstrip(".")) in HONORIFICS


def strip_honorifics(full_name: str) -> str:
    """Drop leading title tokens such as "Md." or "Engr", repeatedly."""
    rest = full_name.strip()
    while rest:
        head, *tail = rest.split(None, 1)
        if not _is_honorific(head):
            break
        rest = tail[0].strip() if tail else ""
    return rest


def first_name(name: str) -> str:
    tokens = word_tokenize(strip_honorifics(name))
    # "Md.Rahim" style glued titles leave a bare honorific token behind
    tokens = [t for t in tokens if not _is_honorific(t[0])][:1]
    if not tokens:
        raise NoFirstName(name)
    return tokens[0][0]


def predict_gender(
    full_name: str,
    lexicon: Mapping[str, Gender],
    client: TransliterationClient | None = None,
) -> Gender:
    """Never raises: client failures fall back to the romanized lookup alone."""
    try:
        key = normalize_case(first_name(full_name))
    except NoFirstName:
        return Gender.UNKNOWN
    hit = lexicon.get(key)
    if hit is not None:
        return hit
    if client is None:
        return Gender.UNKNOWN
    try:
        native = client.transliterate(key)
    except Exception as exc:
        log.warning("transliteration failed for %r: %s", key, exc)
        return Gender.UNKNOWN
    if not isinstance(native, str):
        return Gender.UNKNOWN
    return lexicon.get(normalize_case(native.strip()), Gender.UNKNOWN)
