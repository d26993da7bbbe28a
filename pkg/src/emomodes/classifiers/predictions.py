"""Scoring and model persistence.

Margins from either model family are squashed through a logistic so every
annotator emits the same PredictionSet format. Model files are
self-describing JSON with a schema version, the training config and its
hash, and the vocabulary hash the features were built with.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Optional, Sequence

import numpy as np

from .boosted import Tree, TreeEnsemble
from .common import PredictionSet, TrainConfig, sigmoid
from .linear import LinearModel

SCHEMA_VERSION = 1


def predict(
    model,
    X,
    sent_ids: Optional[Sequence[str]] = None,
    annotator: str = "model",
    config_hash: str = "",
) -> PredictionSet:
    """Score every row of X. ``sent_ids`` defaults to row indices."""
    margins = model.predict_margin(X)
    probs = sigmoid(margins)
    if sent_ids is None:
        sent_ids = [str(i) for i in range(margins.shape[0])]
    if len(sent_ids) != margins.shape[0]:
        raise ValueError("one sent_id per row required")
    scores = {sid: np.asarray(probs[i], dtype=np.float64) for i, sid in enumerate(sent_ids)}
    return PredictionSet(scores=scores, annotator=annotator, config_hash=config_hash)


def _tree_to_dict(tree: Tree) -> dict:
    return {
        "feature": tree.feature.tolist(),
        "threshold": tree.threshold.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "value": tree.value.tolist(),
    }


def _tree_from_dict(d: dict) -> Tree:
    return Tree(
        feature=np.asarray(d["feature"], dtype=np.int32),
        threshold=np.asarray(d["threshold"], dtype=np.float64),
        left=np.asarray(d["left"], dtype=np.int32),
        right=np.asarray(d["right"], dtype=np.int32),
        value=np.asarray(d["value"], dtype=np.float64),
    )


def save_model(
    model, path, cfg: TrainConfig, vocab_hash: str = "", feature_kind: str = "bow",
    extra: dict | None = None,
) -> None:
    """``extra`` carries whatever predict-time needs to rebuild features
    (vocabulary mapping, tokenizer kind, embedding dimension)."""
    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(cfg),
        "config_hash": cfg.hash(),
        "vocab_hash": vocab_hash,
        "feature_kind": feature_kind,
        "extra": extra or {},
    }
    if isinstance(model, LinearModel):
        payload["kind"] = "linear"
        payload["weights"] = model.weights.tolist()
        payload["bias"] = model.bias.tolist()
    elif isinstance(model, TreeEnsemble):
        payload["kind"] = "boosted"
        payload["base"] = model.base.tolist()
        payload["shrinkage"] = model.shrinkage
        payload["n_features"] = model.n_features
        payload["trees"] = [[_tree_to_dict(t) for t in per_label] for per_label in model.trees]
    else:
        raise TypeError(f"unknown model type {type(model).__name__}")
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f)
        f.write("\n")


def load_model(path):
    """Returns (model, metadata dict)."""
    with open(path, encoding="utf-8") as f:
        payload = json.load(f)
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported model schema {payload.get('schema_version')}")
    meta = {
        "config": payload["config"],
        "config_hash": payload["config_hash"],
        "vocab_hash": payload.get("vocab_hash", ""),
        "feature_kind": payload.get("feature_kind", "bow"),
        "extra": payload.get("extra", {}),
        "kind": payload["kind"],
    }
    if payload["kind"] == "linear":
        model = LinearModel(
            weights=np.asarray(payload["weights"], dtype=np.float64),
            bias=np.asarray(payload["bias"], dtype=np.float64),
        )
    elif payload["kind"] == "boosted":
        model = TreeEnsemble(
            trees=[[_tree_from_dict(d) for d in per_label] for per_label in payload["trees"]],
            base=np.asarray(payload["base"], dtype=np.float64),
            shrinkage=float(payload["shrinkage"]),
            n_features=int(payload["n_features"]),
        )
    else:
        raise ValueError(f"unknown model kind {payload['kind']!r}")
    return model, meta
