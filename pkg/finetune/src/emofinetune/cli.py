"""CLI: train the two-stage model, export predictions.

    emofinetune train --corpus corpus.jsonl --split split.json \
        --model-id toy: --out-dir ckpt/
    emofinetune export --checkpoint ckpt/ --corpus corpus.jsonl \
        --split split.json --subset test --out preds.jsonl
"""

from __future__ import annotations

import argparse
import sys

from .data import load_examples, load_split, subset
from .export import export_predictions
from .trainer import FinetuneConfig, two_stage_finetune


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emofinetune", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="two-stage fine-tuning")
    p.add_argument("--corpus", required=True, help="corpus JSONL")
    p.add_argument("--split", required=True, help="split JSON")
    p.add_argument("--model-id", default="toy:",
                   help="encoder id: 'toy:dim=..,layers=..' or a pretrained name/path")
    p.add_argument("--stage-a-epochs", type=int, default=3)
    p.add_argument("--stage-b-epochs", type=int, default=6)
    p.add_argument("--learning-rate", type=float, default=1e-5)
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--class-weight-cap", type=float, default=50.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("export", help="score a corpus slice to prediction JSONL")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split")
    p.add_argument("--subset", choices=["train", "dev", "test"])
    p.add_argument("--annotator", default="finetuned")
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--out", required=True)
    return parser


def main(argv=None) -> None:
    args = build_parser().parse_args(argv)
    if args.command == "train":
        cfg = FinetuneConfig(
            model_id=args.model_id,
            stage_a_epochs=args.stage_a_epochs,
            stage_b_epochs=args.stage_b_epochs,
            learning_rate=args.learning_rate,
            batch_size=args.batch_size,
            class_weight_cap=args.class_weight_cap,
            seed=args.seed,
        )
        examples = load_examples(args.corpus)
        split = load_split(args.split)
        train_examples = subset(examples, split, "train")
        log = two_stage_finetune(train_examples, cfg, args.out_dir)
        print(
            f"stage A: head {log['stage_a']['head_size']}, "
            f"loss {log['stage_a']['loss_start']:.4f} -> {log['stage_a']['loss_end']:.4f}"
        )
        print(
            f"stage B: head {log['stage_b']['head_size']}, "
            f"loss {log['stage_b']['loss_start']:.4f} -> {log['stage_b']['loss_end']:.4f}"
        )
        print(f"checkpoint written to {args.out_dir}")
    elif args.command == "export":
        examples = load_examples(args.corpus)
        if args.split and args.subset:
            examples = subset(examples, load_split(args.split), args.subset)
        n = export_predictions(
            args.checkpoint, examples, args.out,
            annotator=args.annotator, batch_size=args.batch_size,
        )
        print(f"exported {n} rows -> {args.out}")


if __name__ == "__main__":
    main(sys.argv[1:])
