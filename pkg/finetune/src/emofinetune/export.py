"""Prediction export in the harness's JSONL format, with a schema
self-check before anything is written."""

from __future__ import annotations

import json
import math

import torch

from .data import Example, N_LABELS
from .trainer import load_checkpoint


class SchemaViolation(Exception):
    """An exported row would not validate against the prediction schema."""


def predict_scores(model, examples: list[Example], batch_size: int = 16) -> dict[str, list[float]]:
    """Sigmoid scores per sentence. Identical triples are scored once and
    shared, so duplicated inputs get bit-identical rows regardless of
    batch composition."""
    model.eval()
    triples = [(e.previous or "", e.target, e.next or "") for e in examples]
    unique = list(dict.fromkeys(triples))
    by_triple: dict[tuple, list[float]] = {}
    with torch.no_grad():
        for start in range(0, len(unique), batch_size):
            chunk = unique[start : start + batch_size]
            probs = torch.sigmoid(model(chunk))
            for triple, row in zip(chunk, probs):
                by_triple[triple] = [float(x) for x in row]
    return {e.sent_id: by_triple[t] for e, t in zip(examples, triples)}


def check_rows(scores: dict[str, list[float]]) -> None:
    for sent_id, row in scores.items():
        if len(row) != N_LABELS:
            raise SchemaViolation(f"{sent_id}: {len(row)} scores, need {N_LABELS}")
        for x in row:
            if not math.isfinite(x) or not (0.0 <= x <= 1.0):
                raise SchemaViolation(f"{sent_id}: score {x} outside [0, 1]")


def export_predictions(
    ckpt_dir, examples: list[Example], out_path, annotator: str = "finetuned",
    batch_size: int = 16,
) -> int:
    """Score the slice and write prediction JSONL; returns the row count."""
    model = load_checkpoint(ckpt_dir)
    scores = predict_scores(model, examples, batch_size=batch_size)
    check_rows(scores)
    with open(out_path, "w", encoding="utf-8") as f:
        for e in examples:
            f.write(
                json.dumps(
                    {
                        "sent_id": e.sent_id,
                        "scores": scores[e.sent_id],
                        "annotator": annotator,
                    },
                    ensure_ascii=False,
                )
            )
            f.write("\n")
    return len(examples)
