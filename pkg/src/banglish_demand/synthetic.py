"""Seeded synthetic corpora for the misspelling-recovery and sentiment experiments."""
from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from .catalog import DeviceCatalog

EDIT_ALPHABET = string.ascii_lowercase + string.digits

# "{}" marks where the device name goes
CARRIER_TEMPLATES = (
    "ami {} kinte chai",
    "{} er dam koto bhai",
    "bhai {} kemon hobe",
    "{} ta ki ekhono pawa jay",
    "amar {} ekdom jhakkas",
    "keu {} use koren",
    "{} er camera kemon",
    "{} na kinle miss",
    "ei budget e {} best",
    "dokane {} stock ache",
    "{} er battery backup kemon",
    "amar bou {} chay",
)


@dataclass(frozen=True)
class CorpusItem:
    text: str
    device: str
    start: int
    end: int
    edit: str


def one_edit(word: str, rng: np.random.Generator) -> tuple[str, str]:
    """Apply a single random insertion, deletion or substitution; the result always differs."""
    ops = ["insert", "substitute"] + (["delete"] if len(word) > 1 else [])
    op = ops[rng.integers(len(ops))]
    if op == "insert":
        i = int(rng.integers(len(word) + 1))
        c = EDIT_ALPHABET[rng.integers(len(EDIT_ALPHABET))]
        return word[:i] + c + word[i:], op
    i = int(rng.integers(len(word)))
    if op == "delete":
        return word[:i] + word[i + 1:], op
    choices = [c for c in EDIT_ALPHABET if c != word[i].lower()]
    return word[:i] + choices[rng.integers(len(choices))] + word[i + 1:], op


def misspelling_corpus(catalog: DeviceCatalog, n: int = 500, seed: int = 0, edits: int = 1) -> list[CorpusItem]:
    """``n`` carrier sentences, each holding one catalog device with ``edits`` character edits.

    Edits land inside a single token of the (lower-cased) device name, so the
    token count is unchanged. ``edits=0`` yields the clean corpus.
    """
    rng = np.random.default_rng(seed)
    models = catalog.models
    items = []
    for _ in range(n):
        device = models[rng.integers(len(models))]
        template = CARRIER_TEMPLATES[rng.integers(len(CARRIER_TEMPLATES))]
        tokens = device.lower().split()
        ops = []
        for _ in range(edits):
            k = int(rng.integers(len(tokens)))
            tokens[k], op = one_edit(tokens[k], rng)
            ops.append(op)
        surface = " ".join(tokens)
        start = template.index("{}")
        text = template.format(surface)
        items.append(CorpusItem(text, device, start, start + len(surface), "+".join(ops) or "none"))
    return items


def separable_sentiment_set(n_per_class: int = 100, seed: int = 0) -> list[tuple[str, str]]:
    """Comments with "valo" are positive and with "kharap" negative; the rest is shared filler."""
    rng = np.random.default_rng(seed)
    fillers = ["phone", "ta", "ei", "amar", "camera", "battery", "display", "bhai", "dam", "onek", "khub", "ekdom"]
    data = []
    for word, label in (("valo", "pos"), ("kharap", "neg")):
        for _ in range(n_per_class):
            k = int(rng.integers(2, 6))
            words = [fillers[i] for i in rng.integers(len(fillers), size=k)]
            words.insert(int(rng.integers(k + 1)), word)
            data.append((" ".join(words), label))
    order = rng.permutation(len(data))
    return [data[i] for i in order]
