"""Two-stage encoder fine-tuning for 19-label sentence emotion annotation.

Consumes corpus JSONL and split JSON files, produces prediction JSONL in
the harness's shared format plus a checkpoint directory, a training log,
and an exported class-weights file.
"""

__version__ = "0.1.0"

from .data import CANONICAL_ORDER, class_weights, load_examples, render_input
from .export import export_predictions
from .trainer import FinetuneConfig, load_checkpoint, two_stage_finetune

__all__ = [
    "CANONICAL_ORDER",
    "FinetuneConfig",
    "class_weights",
    "export_predictions",
    "load_checkpoint",
    "load_examples",
    "render_input",
    "two_stage_finetune",
]
