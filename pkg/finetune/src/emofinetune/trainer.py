"""The two-stage fine-tuning recipe.

Stage A trains a single-output head on the presence bit alone; stage B
replaces it with a freshly initialized 19-way head and continues on all
labels, with per-label positive-class weights (capped) inside the binary
cross-entropy loss. All encoder weights train in both stages; nothing is
frozen. Each stage gets a fresh Adam optimizer with a constant learning
rate (no decay).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import torch
import torch.nn as nn

from .data import (
    CANONICAL_ORDER,
    EMOTIONAL_INDEX,
    Example,
    class_weights,
)
from .encoders import SentenceClassifier, build_encoder


@dataclass
class FinetuneConfig:
    model_id: str = "toy:"
    stage_a_epochs: int = 3
    stage_b_epochs: int = 6
    learning_rate: float = 1e-5
    batch_size: int = 8
    class_weight_cap: float = 50.0
    seed: int = 0

    def __post_init__(self):
        if self.stage_a_epochs < 0 or self.stage_b_epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.learning_rate <= 0 or self.batch_size <= 0:
            raise ValueError("learning_rate/batch_size must be positive")


def _batches(n: int, batch_size: int, generator: torch.Generator):
    order = torch.randperm(n, generator=generator).tolist()
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def _dataset_loss(model, examples, targets, loss_fn, batch_size) -> float:
    model.eval()
    total = 0.0
    with torch.no_grad():
        for start in range(0, len(examples), batch_size):
            chunk = examples[start : start + batch_size]
            logits = model(
                [(e.previous or "", e.target, e.next or "") for e in chunk]
            )
            total += loss_fn(logits, targets[start : start + batch_size]).item() * len(
                chunk
            )
    model.train()
    return total / len(examples)


def _run_stage(
    model: SentenceClassifier,
    examples: list[Example],
    targets: torch.Tensor,
    loss_fn,
    epochs: int,
    cfg: FinetuneConfig,
    stage_seed: int,
) -> dict:
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    optimizer_state_empty_at_start = len(optimizer.state) == 0
    n_trainable = sum(p.numel() for p in model.parameters() if p.requires_grad)
    n_total = sum(p.numel() for p in model.parameters())
    generator = torch.Generator().manual_seed(stage_seed)

    loss_start = _dataset_loss(model, examples, targets, loss_fn, cfg.batch_size)
    try:
        for _ in range(epochs):
            for batch in _batches(len(examples), cfg.batch_size, generator):
                chunk = [examples[i] for i in batch]
                logits = model(
                    [(e.previous or "", e.target, e.next or "") for e in chunk]
                )
                loss = loss_fn(logits, targets[batch])
                optimizer.zero_grad()
                loss.backward()
                optimizer.step()
    except RuntimeError as e:
        if "out of memory" in str(e).lower():
            raise RuntimeError(
                f"{e}; try a smaller --batch-size (current {cfg.batch_size})"
            ) from e
        raise
    loss_end = _dataset_loss(model, examples, targets, loss_fn, cfg.batch_size)
    return {
        "epochs": epochs,
        "head_size": model.n_outputs,
        "loss_start": loss_start,
        "loss_end": loss_end,
        "optimizer_state_empty_at_start": optimizer_state_empty_at_start,
        "optimizer_steps": epochs * -(-len(examples) // cfg.batch_size),
        "n_trainable_params": n_trainable,
        "n_total_params": n_total,
        "all_weights_trainable": n_trainable == n_total,
    }


def two_stage_finetune(
    train_examples: list[Example], cfg: FinetuneConfig, out_dir
) -> dict:
    """Run both stages and write the checkpoint directory.

    Returns the training log (also written as training_log.json). The
    checkpoint holds the final encoder+head weights, the config, the log,
    and the stage-B class weights for cross-checking against the harness.
    """
    if not train_examples:
        raise ValueError("no training examples (missing or empty split?)")
    torch.manual_seed(cfg.seed)
    encoder = build_encoder(cfg.model_id)
    model = SentenceClassifier(encoder, n_outputs=1)
    model.train()

    # Stage A: presence bit only, unweighted.
    targets_a = torch.tensor(
        [[float(e.labels[EMOTIONAL_INDEX])] for e in train_examples]
    )
    stage_a = _run_stage(
        model,
        train_examples,
        targets_a,
        nn.BCEWithLogitsLoss(),
        cfg.stage_a_epochs,
        cfg,
        stage_seed=cfg.seed * 2 + 1,
    )

    # Stage B: fresh 19-way head, fresh optimizer, weighted BCE.
    model.replace_head(len(CANONICAL_ORDER))
    weights = class_weights(train_examples, cfg.class_weight_cap)
    targets_b = torch.tensor([[float(b) for b in e.labels] for e in train_examples])
    stage_b = _run_stage(
        model,
        train_examples,
        targets_b,
        nn.BCEWithLogitsLoss(pos_weight=torch.tensor(weights)),
        cfg.stage_b_epochs,
        cfg,
        stage_seed=cfg.seed * 2 + 2,
    )
    stage_b["head_reinitialized"] = True

    log = {
        "config": asdict(cfg),
        "n_train_sentences": len(train_examples),
        "stage_a": stage_a,
        "stage_b": stage_b,
        "class_weights": dict(zip(CANONICAL_ORDER, weights)),
    }

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    torch.save(model.state_dict(), out / "weights.pt")
    with open(out / "config.json", "w", encoding="utf-8") as f:
        json.dump({"model_id": cfg.model_id, "n_outputs": model.n_outputs,
                   "finetune": asdict(cfg)}, f, indent=2)
    with open(out / "training_log.json", "w", encoding="utf-8") as f:
        json.dump(log, f, indent=2)
    with open(out / "class_weights.json", "w", encoding="utf-8") as f:
        json.dump(
            {
                "cap": cfg.class_weight_cap,
                "order": list(CANONICAL_ORDER),
                "weights": weights,
            },
            f,
            indent=2,
        )
    return log


def load_checkpoint(ckpt_dir) -> SentenceClassifier:
    ckpt = Path(ckpt_dir)
    with open(ckpt / "config.json", encoding="utf-8") as f:
        config = json.load(f)
    encoder = build_encoder(config["model_id"])
    model = SentenceClassifier(encoder, n_outputs=config["n_outputs"])
    model.load_state_dict(torch.load(ckpt / "weights.pt", weights_only=True))
    model.eval()
    return model
