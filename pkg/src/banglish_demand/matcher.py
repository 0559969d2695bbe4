"""Fuzzy spell correction of device names against the gazetteer, and entity extraction.

A comment's token n-grams are compared to every catalog model. A unit is
rewritten to the catalog spelling when the best candidate is within
``max_edit_distance`` (exclusive) edits and its Levenshtein ratio exceeds
``min_ratio``. Candidates rank by smallest distance, then highest ratio,
then catalog order.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .catalog import DeviceCatalog
from .fileio import write_csv
from .textprep import TokenizedComment, normalize_case, word_tokenize


@dataclass(frozen=True)
class MatcherConfig:
    max_edit_distance: int = 3
    min_ratio: float = 0.55
    max_ngram: int | None = None

    def __post_init__(self):
        if self.max_edit_distance <= 0:
            raise ValueError("max_edit_distance must be positive")
        if not 0 <= self.min_ratio < 1:
            raise ValueError("min_ratio must lie in [0, 1)")
        if self.max_ngram is not None and self.max_ngram < 1:
            raise ValueError("max_ngram must be >= 1")


class Replacement(NamedTuple):
    start: int
    end: int
    original: str
    replacement: str
    distance: int
    ratio: float


@dataclass(frozen=True)
class CorrectionResult:
    comment_id: int
    original_text: str
    corrected_text: str
    replacements: tuple[Replacement, ...]


class EntityMatch(NamedTuple):
    comment_id: int
    start: int
    end: int
    device: str


def _pattern_bits(a: str) -> dict[str, int]:
    peq: dict[str, int] = {}
    for i, c in enumerate(a):
        peq[c] = peq.get(c, 0) | (1 << i)
    return peq


def _trim_affixes(a: str, b: str) -> tuple[str, str]:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    a, b = a[i:], b[i:]
    j = 0
    n -= i
    while j < n and a[-1 - j] == b[-1 - j]:
        j += 1
    if j:
        a, b = a[:-j], b[:-j]
    return a, b


def _edit_distance_py(a: str, b: str) -> int:
    """Levenshtein distance with unit costs, case-sensitive.

    Bit-parallel over the shorter string (Myers/Hyyrö), so each character
    of the longer string costs a handful of integer operations.
    """
    if a == b:
        return 0
    a, b = _trim_affixes(a, b)
    if len(a) > len(b):
        a, b = b, a
    m = len(a)
    if m == 0:
        return len(b)
    peq = _pattern_bits(a)
    mask = (1 << m) - 1
    last = 1 << (m - 1)
    pv, mv, score = mask, 0, m
    for c in b:
        eq = peq.get(c, 0)
        xv = eq | mv
        xh = ((((eq & pv) + pv) & mask) ^ pv) | eq
        ph = mv | (~(xh | pv) & mask)
        mh = pv & xh
        if ph & last:
            score += 1
        elif mh & last:
            score -= 1
        ph = ((ph << 1) | 1) & mask
        mh = (mh << 1) & mask
        pv = mh | (~(xv | ph) & mask)
        mv = ph & xv
    return score


def _lcs_length_py(a: str, b: str) -> int:
    if len(a) > len(b):
        a, b = b, a
    m = len(a)
    if m == 0:
        return 0
    peq = _pattern_bits(a)
    mask = (1 << m) - 1
    s = mask
    for c in b:
        u = s & peq.get(c, 0)
        s = ((s + u) | (s - u)) & mask
    return m - s.bit_count()


def _indel_distance_py(a: str, b: str) -> int:
    return len(a) + len(b) - 2 * _lcs_length_py(a, b)


try:
    from rapidfuzz.distance import Indel as _Indel
    from rapidfuzz.distance import Levenshtein as _Levenshtein
except ImportError:  # pragma: no cover
    edit_distance = _edit_distance_py
    indel_distance = _indel_distance_py
else:
    def edit_distance(a: str, b: str) -> int:
        """Levenshtein distance with unit costs, case-sensitive."""
        return _Levenshtein.distance(a, b)

    def indel_distance(a: str, b: str) -> int:
        """Edit distance where a substitution costs 2 (a deletion plus an insertion)."""
        return _Indel.distance(a, b)


def levenshtein_ratio(a: str, b: str) -> float:
    """Similarity in [0, 1]: ``(|a| + |b| - indel_distance) / (|a| + |b|)``."""
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return (total - indel_distance(a, b)) / total


def best_candidate(unit: str, catalog: DeviceCatalog, cfg: MatcherConfig) -> tuple[str, int, float] | None:
    """Closest catalog model to an already case-folded unit, or None if no model passes both thresholds."""
    best = None
    limit = cfg.max_edit_distance
    n = len(unit)
    buckets = catalog.by_length
    # |len(a) - len(b)| is a lower bound on the distance
    for length in range(n - limit + 1, n + limit):
        for key, model in buckets.get(length, ()):
            d = edit_distance(unit, key)
            if d >= limit:
                continue
            e = levenshtein_ratio(unit, key)
            if e <= cfg.min_ratio:
                continue
            rank = (d, -e, catalog_index(catalog, key))
            if best is None or rank < best[0]:
                best = (rank, model, d, e)
    if best is None:
        return None
    return best[1], best[2], best[3]


def catalog_index(catalog: DeviceCatalog, key: str) -> int:
    return catalog.order[key]


def _select_units(folded: Sequence[str], max_n: int, choose) -> list[tuple[int, int, object]]:
    taken = [False] * len(folded)
    picked = []
    for n in range(min(max_n, len(folded)), 0, -1):
        for i in range(len(folded) - n + 1):
            if any(taken[i:i + n]):
                continue
            hit = choose(" ".join(folded[i:i + n]))
            if hit is None:
                continue
            taken[i:i + n] = [True] * n
            picked.append((i, n, hit))
    return picked


def correct_tokens(
    comment: TokenizedComment, catalog: DeviceCatalog, cfg: MatcherConfig = MatcherConfig()
) -> CorrectionResult:
    """Rewrite misspelled device mentions to their catalog spelling.

    Exact (case-insensitive) n-gram matches are claimed first so a correctly
    spelled device is never absorbed into a longer fuzzy match. The remaining
    tokens are then matched fuzzily, longest n-gram first, leftmost first.
    """
    toks = comment.tokens
    folded = [normalize_case(t[0]) for t in toks]
    max_n = cfg.max_ngram or catalog.max_model_tokens

    exact = catalog.by_key

    def choose_exact(unit):
        model = exact.get(unit)
        return None if model is None else (model, 0, 1.0)

    picked = _select_units(folded, max_n, choose_exact)
    claimed = [False] * len(toks)
    for i, n, _ in picked:
        claimed[i:i + n] = [True] * n
    masked = [None if c else f for f, c in zip(folded, claimed)]

    def choose_fuzzy(unit):
        return best_candidate(unit, catalog, cfg)

    # masked tokens split the sequence into independent runs
    start = 0
    for j in range(len(masked) + 1):
        if j == len(masked) or masked[j] is None:
            run = masked[start:j]
            if run:
                for i, n, hit in _select_units(run, max_n, choose_fuzzy):
                    picked.append((start + i, n, hit))
            start = j + 1

    text = comment.text
    parts, replacements, cursor = [], [], 0
    for i, n, (model, d, e) in sorted(picked):
        s, t = toks[i][1], toks[i + n - 1][2]
        replacements.append(Replacement(s, t, text[s:t], model, d, e))
        parts.append(text[cursor:s])
        parts.append(model)
        cursor = t
    parts.append(text[cursor:])
    return CorrectionResult(comment.comment_id, text, "".join(parts), tuple(replacements))


def correct_text(text: str, catalog: DeviceCatalog, cfg: MatcherConfig = MatcherConfig(), comment_id: int = 0):
    return correct_tokens(TokenizedComment.from_text(comment_id, text), catalog, cfg)


def extract_entities(
    corrected: CorrectionResult | str, comment_id: int, catalog: DeviceCatalog
) -> list[EntityMatch]:
    """Case-insensitive whole-token occurrences of catalog models, longest then leftmost first."""
    text = corrected if isinstance(corrected, str) else corrected.corrected_text
    toks = word_tokenize(text)
    folded = [normalize_case(t[0]) for t in toks]
    exact = catalog.by_key

    def choose(unit):
        return exact.get(unit)

    matches = []
    for i, n, model in _select_units(folded, catalog.max_model_tokens, choose):
        s, t = toks[i][1], toks[i + n - 1][2]
        # tokens separated by extra spaces or punctuation do not spell the device
        if normalize_case(text[s:t]) != normalize_case(model):
            continue
        matches.append(EntityMatch(comment_id, s, t, model))
    matches.sort(key=lambda m: m.start)
    return matches


def correct_all(
    comments: Iterable[tuple[int, str]],
    catalog: DeviceCatalog,
    cfg: MatcherConfig = MatcherConfig(),
    threads: int = 1,
) -> list[CorrectionResult]:
    """Correct many ``(comment_id, text)`` pairs; output order follows input order."""
    work = [TokenizedComment.from_text(cid, text) for cid, text in comments]
    if threads <= 1:
        return [correct_tokens(c, catalog, cfg) for c in work]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: correct_tokens(c, catalog, cfg), work))


def write_corrections(results: Iterable[CorrectionResult], path: str | os.PathLike) -> None:
    rows = (
        (r.comment_id, rep.start, rep.end, rep.original, rep.replacement, rep.distance, f"{rep.ratio:.6f}")
        for r in results
        for rep in r.replacements
    )
    write_csv(path, ["comment_id", "start", "end", "original", "replacement", "distance", "ratio"], rows)


def write_entities(matches: Iterable[EntityMatch], path: str | os.PathLike) -> None:
    write_csv(path, ["comment_id", "start", "end", "device"], matches)
