"""Shared training configuration, class weighting, and the prediction format."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import expit

from ..errors import DimensionMismatch, SchemaViolation
from ..labels import N_LABELS, LabelVector


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for both trainers.

    ``learning_rate`` is the boosting shrinkage; the linear trainer's step
    size is 1/(l2*t) by construction. ``class_weight_cap`` bounds the
    positive-class weight applied to rare labels.
    """

    epochs: int = 10
    learning_rate: float = 0.1
    l2: float = 1e-4
    seed: int = 0
    class_weight_cap: float = 50.0
    rounds: int = 100
    max_depth: int = 6
    threshold: float = 0.5

    def __post_init__(self):
        if self.epochs <= 0 or self.rounds < 0 or self.max_depth <= 0:
            raise ValueError("epochs/rounds/max_depth must be positive")
        if self.learning_rate <= 0 or self.l2 <= 0 or self.class_weight_cap <= 0:
            raise ValueError("learning_rate/l2/class_weight_cap must be positive")
        if not (0.0 < self.threshold < 1.0):
            raise ValueError("threshold must lie in (0, 1)")

    def hash(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def to_label_matrix(gold: Sequence[LabelVector] | np.ndarray) -> np.ndarray:
    """Rows of 19 booleans from LabelVectors (or pass an array through)."""
    if isinstance(gold, np.ndarray):
        if gold.ndim != 2 or gold.shape[1] != N_LABELS:
            raise DimensionMismatch(f"label matrix must be (n, {N_LABELS})")
        return gold.astype(bool)
    return np.asarray([v.as_ints() for v in gold], dtype=bool)


def compute_class_weights(
    gold: Sequence[LabelVector] | np.ndarray, cap: float = 50.0
) -> np.ndarray:
    """Positive-class weight per label: min(negatives/positives, cap).

    Labels with no positive example get the cap, so degenerate labels in
    small corpora do not derail training.
    """
    Y = to_label_matrix(gold)
    n = Y.shape[0]
    if n == 0:
        raise ValueError("need at least one sample")
    pos = Y.sum(axis=0).astype(np.float64)
    neg = n - pos
    weights = np.full(N_LABELS, float(cap))
    nonzero = pos > 0
    weights[nonzero] = np.minimum(neg[nonzero] / pos[nonzero], float(cap))
    return weights


def sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    return expit(x)


@dataclass
class PredictionSet:
    """Per-sentence 19-score vectors from any annotator.

    Scores are probabilities in [0, 1]; every annotator (trained model,
    lexicon, LLM, external file) shares this format.
    """

    scores: dict[str, np.ndarray]
    annotator: str
    config_hash: str = ""
    extras: dict = field(default_factory=dict)  # e.g. abstain counts

    def validate(self) -> None:
        for sent_id, row in self.scores.items():
            arr = np.asarray(row, dtype=np.float64)
            if arr.shape != (N_LABELS,):
                raise SchemaViolation(
                    f"{sent_id}: expected {N_LABELS} scores, got {arr.shape}"
                )
            if not np.all(np.isfinite(arr)):
                raise SchemaViolation(f"{sent_id}: non-finite score")
            if arr.min() < 0.0 or arr.max() > 1.0:
                raise SchemaViolation(f"{sent_id}: score outside [0, 1]")

    def save_jsonl(self, path) -> None:
        self.validate()
        with open(path, "w", encoding="utf-8") as f:
            for sent_id, row in self.scores.items():
                f.write(
                    json.dumps(
                        {
                            "sent_id": sent_id,
                            "scores": [float(x) for x in row],
                            "annotator": self.annotator,
                        },
                        ensure_ascii=False,
                    )
                )
                f.write("\n")

    @classmethod
    def load_jsonl(cls, path) -> "PredictionSet":
        scores: dict[str, np.ndarray] = {}
        annotator = "external"
        with open(path, encoding="utf-8") as f:
            for line in f:
                if not line.strip():
                    continue
                rec = json.loads(line)
                scores[rec["sent_id"]] = np.asarray(rec["scores"], dtype=np.float64)
                annotator = rec.get("annotator", annotator)
        ps = cls(scores=scores, annotator=annotator)
        ps.validate()
        return ps


def threshold_predictions(
    pred: PredictionSet | Mapping[str, Iterable[float]], t: float
) -> dict[str, LabelVector]:
    """Bit_i = score_i >= t. No derivation rules are applied: this is the
    raw 19-way output, which may be internally inconsistent."""
    if not (0.0 < t < 1.0):
        raise ValueError("threshold must lie in (0, 1)")
    scores = pred.scores if isinstance(pred, PredictionSet) else pred
    out: dict[str, LabelVector] = {}
    for sent_id, row in scores.items():
        arr = np.asarray(row, dtype=np.float64)
        out[sent_id] = LabelVector.from_bits(arr >= t)
    return out
