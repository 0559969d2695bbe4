"""Binary sentiment classifier: mean-pooled embeddings, one ReLU layer, sigmoid output.

Trained with mini-batch Adam on binary cross-entropy. Inputs are padded or
truncated to a fixed length; dropout is applied to the pooled embedding and
to the hidden layer during training only.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Sequence

import numpy as np

from .annotate import NEGATIVE, POSITIVE
from .fileio import atomic_write
from .textprep import normalize_case, word_tokenize

PAD = 0
OOV = 1
ARCHITECTURE = "mean-pool-v1"
PARAM_NAMES = ("embedding", "hidden_weight", "hidden_bias", "output_weight", "output_bias")


@dataclass(frozen=True)
class SentimentConfig:
    max_sequence_length: int = 300
    embedding_dropout: float = 0.25
    hidden_dropout: float = 0.5
    embedding_dim: int = 32
    hidden_dim: int = 32
    learning_rate: float = 1e-3
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8
    epochs: int = 30
    batch_size: int = 16
    seed: int = 0
    max_vocab: int | None = None
    architecture: str = ARCHITECTURE

    def __post_init__(self):
        for name in ("embedding_dropout", "hidden_dropout"):
            if not 0 <= getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in [0, 1)")
        if self.max_sequence_length < 1:
            raise ValueError("max_sequence_length must be >= 1")
        if self.embedding_dim < 1 or self.hidden_dim < 1 or self.batch_size < 1:
            raise ValueError("dimensions and batch_size must be positive")
        if self.epochs < 0 or self.learning_rate <= 0:
            raise ValueError("epochs must be >= 0 and learning_rate > 0")
        if self.architecture != ARCHITECTURE:
            raise ValueError(f"unsupported architecture {self.architecture!r}")


def tokens_of(text: str) -> list[str]:
    return [normalize_case(t[0]) for t in word_tokenize(text)]


class Vocabulary:
    """Token -> index; 0 is padding, 1 is out-of-vocabulary.

    Built from training text only, most frequent first, ties alphabetical.
    """

    def __init__(self, tokens: Sequence[str]):
        self.tokens = list(tokens)
        self.index = {t: i + 2 for i, t in enumerate(self.tokens)}

    def __len__(self) -> int:
        return len(self.tokens) + 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    @classmethod
    def build(cls, texts: Iterable[str], max_size: int | None = None) -> "Vocabulary":
        counts = Counter(tok for text in texts for tok in tokens_of(text))
        ranked = sorted(counts, key=lambda t: (-counts[t], t))
        if max_size is not None:
            ranked = ranked[: max(0, max_size - 2)]
        return cls(ranked)


def encode(text: str, vocab: Vocabulary, max_len: int) -> list[int]:
    ids = [vocab.index.get(t, OOV) for t in tokens_of(text)][:max_len]
    return ids + [PAD] * (max_len - len(ids))


@dataclass
class SentimentModel:
    config: SentimentConfig
    vocab: Vocabulary
    params: dict[str, np.ndarray]
    decision_threshold: float = 0.5
    loss_history: list[float] = field(default_factory=list)


def init_params(vocab_size: int, cfg: SentimentConfig, rng: np.random.Generator) -> dict[str, np.ndarray]:
    def u(*shape):
        return rng.uniform(-0.05, 0.05, size=shape)

    return {
        "embedding": u(vocab_size, cfg.embedding_dim),
        "hidden_weight": u(cfg.hidden_dim, cfg.embedding_dim),
        "hidden_bias": u(cfg.hidden_dim),
        "output_weight": u(cfg.hidden_dim),
        "output_bias": u(1),
    }


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _dropout_masks(rng, batch, cfg):
    def mask(rate, dim):
        if rate == 0:
            return np.ones((batch, dim))
        return (rng.random((batch, dim)) >= rate) / (1.0 - rate)

    return mask(cfg.embedding_dropout, cfg.embedding_dim), mask(cfg.hidden_dropout, cfg.hidden_dim)


def _forward(params, seqs, masks=None):
    """Batched forward pass; returns the logits and the cache backprop needs."""
    nonpad = seqs != PAD
    counts = nonpad.sum(axis=1)
    emb = params["embedding"][seqs] * nonpad[..., None]
    pooled = emb.sum(axis=1) / np.maximum(counts, 1)[:, None]
    drop_e, drop_h = masks if masks is not None else (None, None)
    pooled_d = pooled if drop_e is None else pooled * drop_e
    pre = pooled_d @ params["hidden_weight"].T + params["hidden_bias"]
    hidden = np.maximum(pre, 0.0)
    hidden_d = hidden if drop_h is None else hidden * drop_h
    logits = hidden_d @ params["output_weight"] + params["output_bias"][0]
    return logits, (seqs, nonpad, counts, pooled_d, pre, hidden_d, drop_e, drop_h)


def bce_from_logits(logits: np.ndarray, labels: np.ndarray) -> float:
    # softplus(z) - y*z, written to avoid overflow
    return float(np.mean(np.logaddexp(0.0, logits) - labels * logits))


def loss_and_gradients(params, seqs, labels, masks=None):
    """Mean binary cross-entropy over the batch and its gradient for every parameter."""
    seqs = np.asarray(seqs)
    labels = np.asarray(labels, dtype=float)
    logits, (seqs, nonpad, counts, pooled_d, pre, hidden_d, drop_e, drop_h) = _forward(params, seqs, masks)
    loss = bce_from_logits(logits, labels)
    dz = (_sigmoid(logits) - labels) / len(labels)

    grads = {
        "output_weight": hidden_d.T @ dz,
        "output_bias": np.array([dz.sum()]),
    }
    d_hidden = np.outer(dz, params["output_weight"])
    if drop_h is not None:
        d_hidden = d_hidden * drop_h
    d_pre = d_hidden * (pre > 0)
    grads["hidden_weight"] = d_pre.T @ pooled_d
    grads["hidden_bias"] = d_pre.sum(axis=0)
    d_pooled = d_pre @ params["hidden_weight"]
    if drop_e is not None:
        d_pooled = d_pooled * drop_e
    per_token = d_pooled / np.maximum(counts, 1)[:, None]
    rows, _ = np.nonzero(nonpad)
    d_emb = np.zeros_like(params["embedding"])
    np.add.at(d_emb, seqs[nonpad], per_token[rows])
    grads["embedding"] = d_emb
    return loss, grads


def forward(model: SentimentModel, sequence: Sequence[int], train_mode: bool = False, dropout_seed: int = 0) -> float:
    """Positive-class probability for one encoded sequence."""
    cfg = model.config
    if len(sequence) != cfg.max_sequence_length:
        raise ValueError(f"sequence length {len(sequence)} != {cfg.max_sequence_length}")
    seqs = np.asarray([sequence])
    masks = _dropout_masks(np.random.default_rng(dropout_seed), 1, cfg) if train_mode else None
    logits, _ = _forward(model.params, seqs, masks)
    return float(_sigmoid(logits)[0])


def encode_batch(texts: Iterable[str], vocab: Vocabulary, max_len: int) -> np.ndarray:
    rows = [encode(t, vocab, max_len) for t in texts]
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), max_len)


def predict_proba(model: SentimentModel, texts: Sequence[str]) -> np.ndarray:
    if not texts:
        return np.zeros(0)
    seqs = encode_batch(texts, model.vocab, model.config.max_sequence_length)
    logits, _ = _forward(model.params, seqs)
    return _sigmoid(logits)


def _as_binary(label) -> float:
    if label in (POSITIVE, "pos", 1, True):
        return 1.0
    if label in (NEGATIVE, "neg", 0, False):
        return 0.0
    raise ValueError(f"unknown sentiment label {label!r}")


def train(data: Sequence[tuple[str, object]], cfg: SentimentConfig = SentimentConfig()) -> SentimentModel:
    """Fit on ``(text, label)`` pairs; labels are Positive/Negative, pos/neg or 1/0."""
    texts = [t for t, _ in data]
    labels = np.array([_as_binary(y) for _, y in data])
    if len(set(labels.tolist())) < 2:
        raise ValueError("training data must contain both classes")

    init_ss, shuffle_ss, dropout_ss = np.random.SeedSequence(cfg.seed).spawn(3)
    vocab = Vocabulary.build(texts, cfg.max_vocab)
    params = init_params(len(vocab), cfg, np.random.default_rng(init_ss))
    model = SentimentModel(cfg, vocab, params)
    if cfg.epochs == 0:
        return model

    seqs = encode_batch(texts, vocab, cfg.max_sequence_length)
    shuffle_rng = np.random.default_rng(shuffle_ss)
    dropout_rng = np.random.default_rng(dropout_ss)
    m = {k: np.zeros_like(v) for k, v in params.items()}
    v = {k: np.zeros_like(p) for k, p in params.items()}
    b1, b2, eps, lr = cfg.adam_beta1, cfg.adam_beta2, cfg.adam_epsilon, cfg.learning_rate
    step = 0
    for _ in range(cfg.epochs):
        order = shuffle_rng.permutation(len(labels))
        batch_losses = []
        for lo in range(0, len(order), cfg.batch_size):
            idx = order[lo:lo + cfg.batch_size]
            masks = _dropout_masks(dropout_rng, len(idx), cfg)
            loss, grads = loss_and_gradients(params, seqs[idx], labels[idx], masks)
            batch_losses.append(loss)
            step += 1
            for k, g in grads.items():
                m[k] = b1 * m[k] + (1 - b1) * g
                v[k] = b2 * v[k] + (1 - b2) * g * g
                m_hat = m[k] / (1 - b1 ** step)
                v_hat = v[k] / (1 - b2 ** step)
                params[k] -= lr * m_hat / (np.sqrt(v_hat) + eps)
        epoch_loss = float(np.mean(batch_losses))
        if not np.isfinite(epoch_loss):
            raise FloatingPointError(f"training loss became non-finite at epoch {len(model.loss_history) + 1}")
        model.loss_history.append(epoch_loss)
    return model


def accuracy_at(probs: np.ndarray, labels: np.ndarray, threshold: float) -> float:
    return float(np.mean((probs >= threshold) == (labels == 1.0)))


def calibrate_threshold(model: SentimentModel, validation: Sequence[tuple[str, object]]) -> float:
    """Pick the cutoff with the best validation accuracy among observed probabilities and 0.5.

    Ties go to the candidate nearest 0.5 (then the lower one). The result is
    stored on the model.
    """
    labels = np.array([_as_binary(y) for _, y in validation])
    if len(labels) == 0 or len(set(labels.tolist())) < 2:
        model.decision_threshold = 0.5
        return 0.5
    probs = predict_proba(model, [t for t, _ in validation])
    candidates = sorted(set(probs.tolist()) | {0.5})
    best = max(candidates, key=lambda t: (accuracy_at(probs, labels, t), -abs(t - 0.5), -t))
    model.decision_threshold = float(best)
    return model.decision_threshold


def classify(model: SentimentModel, text: str) -> tuple[str, float]:
    p = float(predict_proba(model, [text])[0])
    return (POSITIVE if p >= model.decision_threshold else NEGATIVE), p


def save_model(model: SentimentModel, path: str | os.PathLike) -> None:
    doc = {
        "architecture": model.config.architecture,
        "config": asdict(model.config),
        "vocabulary": model.vocab.tokens,
        "decision_threshold": model.decision_threshold,
        "loss_history": model.loss_history,
        "parameters": {k: model.params[k].tolist() for k in PARAM_NAMES},
    }
    with atomic_write(path) as fh:
        json.dump(doc, fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def load_model(path: str | os.PathLike) -> SentimentModel:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    known = {f.name for f in fields(SentimentConfig)}
    cfg = SentimentConfig(**{k: v for k, v in doc["config"].items() if k in known})
    params = {k: np.asarray(doc["parameters"][k], dtype=float) for k in PARAM_NAMES}
    return SentimentModel(
        cfg,
        Vocabulary(doc["vocabulary"]),
        params,
        float(doc["decision_threshold"]),
        list(doc.get("loss_history", [])),
    )
