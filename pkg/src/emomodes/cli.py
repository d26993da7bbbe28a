"""Command-line entry point.

Subcommands: prepare, split, stats, train, predict, annotate-llm,
lexicon-annotate, evaluate, analyze. Exit codes: 0 success, 1 validation
failure, 2 I/O or backend failure, 64 usage error. A JSON config file
can pre-fill any flag of the chosen subcommand; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import eval as ev
from .classifiers import (
    PredictionSet,
    TrainConfig,
    predict as model_predict,
    save_model,
    load_model,
    threshold_predictions,
    train_boosted_ovr,
    train_linear_ovr,
)
from .corpus import SplitAssignment, corpus_stats, grouped_split, ingest_corpus, merge_corpus
from .errors import BackendError, EmomodesError, MissingSplit, ParseError
from .features import (
    build_vocabulary,
    load_embedding_table,
    load_subword_tokenizer,
    regex_tokenizer,
    stack,
    vectorize,
)
from .labels import CANONICAL_ORDER, validate_vector
from .lexicons import (
    EmotionLexicon,
    PolarityLexicon,
    lexicon_annotate,
    load_polarity_map,
    polarity_score,
    project_polarity,
)
from .llm import AnnotatorConfig, HttpChatBackend, run_batch
from .pipeline import filter_subset, gold_map, read_sentences_jsonl, write_sentences_jsonl

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> tuple[_Parser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="emomodes", description=__doc__)
    parser.add_argument("--config", help="JSON config file; flags override it")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p = sub.add_parser("prepare", parents=[], help="merge segments to sentence gold vectors")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("split", help="grouped train/dev/test split")
    p.add_argument("--corpus", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--fractions", default="0.70,0.10,0.20")
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="label distribution and corpus sizes")
    p.add_argument("--corpus", required=True)
    p.add_argument("--split")
    p.add_argument("--json-out")

    p = sub.add_parser("train", help="train a linear or boosted annotator")
    p.add_argument("--corpus", required=True, help="prepared sentences JSONL")
    p.add_argument("--split", required=True)
    p.add_argument("--annotator", choices=["linear", "boosted"], required=True)
    p.add_argument("--features", choices=["bow", "embeddings"], default="bow")
    p.add_argument("--embeddings", help="TSV embedding table (features=embeddings)")
    p.add_argument("--tokenizer-file", help="serialized subword tokenizer definition")
    p.add_argument("--binary-bow", action="store_true", help="0/1 instead of counts")
    p.add_argument("--seed", type=int)
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--class-weight-cap", type=float, default=50.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("predict", help="score sentences with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True, help="prepared sentences JSONL")
    p.add_argument("--split")
    p.add_argument("--subset", choices=["train", "dev", "test"])
    p.add_argument("--embeddings")
    p.add_argument("--tokenizer-file")
    p.add_argument("--annotator-name")
    p.add_argument("--out", required=True)

    p = sub.add_parser("annotate-llm", help="conversational yes/no annotation")
    p.add_argument("--corpus", required=True, help="prepared sentences JSONL")
    p.add_argument("--split")
    p.add_argument("--subset", choices=["train", "dev", "test"])
    p.add_argument(
        "--variant",
        choices=["positives_only", "with_counterexamples"],
        default="positives_only",
    )
    p.add_argument("--endpoint", required=True)
    p.add_argument("--model", required=True, help="backend model identifier")
    p.add_argument("--credential-env", default="EMOMODES_API_KEY")
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--max-retries", type=int, default=3)
    p.add_argument("--backoff", type=float, default=1.0)
    p.add_argument("--cache-dir")
    p.add_argument("--jobs", type=int, default=1, help="sentences in flight")
    p.add_argument("--limit", type=int, help="annotate only the first N sentences")
    p.add_argument("--out", required=True)

    p = sub.add_parser("lexicon-annotate", help="emotion-lexicon baseline")
    p.add_argument("--corpus", required=True, help="prepared sentences JSONL")
    p.add_argument("--lexicon", required=True, help="emotion lexicon TSV")
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="per-label P/R/F1 report")
    p.add_argument("--gold", required=True, help="prepared sentences JSONL")
    p.add_argument("--pred", required=True, help="prediction JSONL")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--strict", action="store_true",
                   help="fail when thresholded predictions violate derivation rules")
    p.add_argument("--out", help="write the JSON report here")

    p = sub.add_parser("analyze", help="confusion matrices, kappa, cross-tables, polarity")
    p.add_argument("--gold", required=True, help="prepared sentences JSONL")
    p.add_argument("--pred", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--polarity-map", help="JSON overriding the category→polarity map")
    p.add_argument("--polarity-lexicon", help="TSV polarity lexicon to score as baseline")
    p.add_argument("--agreement", help="JSONL of {source, agree} expert judgments")
    p.add_argument("--out-dir", required=True)

    return parser, dict(sub.choices)


def _apply_config(argv: list[str]) -> argparse.Namespace:
    parser, _ = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.error("a subcommand is required")
    if not args.config:
        return args
    with open(args.config, encoding="utf-8") as f:
        config = json.load(f)
    if not isinstance(config, dict):
        raise ParseError("config file must hold a JSON object")
    known = set(vars(args))
    unknown = [k for k in config if k.replace("-", "_") not in known]
    if unknown:
        raise ParseError(f"unknown config keys: {unknown}")
    # Re-parse with the config as the chosen subcommand's defaults, so
    # explicitly given flags keep winning.
    fresh, subparsers = build_parser()
    subparsers[args.command].set_defaults(
        **{k.replace("-", "_"): v for k, v in config.items()}
    )
    return fresh.parse_args(argv)


def _load_split(path) -> SplitAssignment:
    return SplitAssignment.load(path)


def _require_seed(args) -> int:
    if args.seed is None:
        raise ParseError("--seed is required (stochastic step; no wall-clock seeding)")
    return args.seed


def _tokenizer(args):
    if getattr(args, "tokenizer_file", None):
        return load_subword_tokenizer(args.tokenizer_file), {
            "tokenizer": "file",
            "tokenizer_file": args.tokenizer_file,
        }
    return regex_tokenizer, {"tokenizer": "regex"}


def cmd_prepare(args) -> int:
    corpus = merge_corpus(ingest_corpus(args.corpus))
    if args.strict:
        for s in corpus.sentences():
            violations = validate_vector(s.gold)
            if violations:
                raise ParseError(f"{s.sent_id}: {violations}")
    write_sentences_jsonl(corpus, args.out)
    print(
        f"prepared {corpus.n_texts} texts, {corpus.n_sentences} sentences, "
        f"{corpus.n_words} words -> {args.out}"
    )
    return EXIT_OK


def cmd_split(args) -> int:
    seed = _require_seed(args)
    fractions = tuple(float(x) for x in args.fractions.split(","))
    if len(fractions) != 3:
        raise ParseError("--fractions needs three comma-separated numbers")
    corpus = ingest_corpus(args.corpus)
    assignment = grouped_split(corpus, fractions=fractions, seed=seed)
    assignment.save(args.out)
    sizes = {
        name: sum(
            len(d.sentences)
            for d in corpus.documents
            if assignment.assignment[d.doc_id] == name
        )
        for name in ("train", "dev", "test")
    }
    print(f"split {corpus.n_texts} documents; sentences per subset: {sizes}")
    return EXIT_OK


def cmd_stats(args) -> int:
    corpus = merge_corpus(ingest_corpus(args.corpus))
    split = _load_split(args.split) if args.split else None
    table = corpus_stats(corpus, split)
    print(table.to_text())
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as f:
            f.write(table.to_json())
            f.write("\n")
    return EXIT_OK


def cmd_train(args) -> int:
    seed = _require_seed(args)
    records = read_sentences_jsonl(args.corpus)
    split = _load_split(args.split)
    train_records = filter_subset(records, split, "train")
    if not train_records:
        raise MissingSplit("no training sentences under this split")
    gold = gold_map(train_records)
    Y = np.asarray([gold[r.sent_id].as_ints() for r in train_records], dtype=bool)

    cfg = TrainConfig(
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        l2=args.l2,
        seed=seed,
        class_weight_cap=args.class_weight_cap,
        rounds=args.rounds,
        max_depth=args.max_depth,
    )

    if args.features == "bow":
        tokenizer, tok_meta = _tokenizer(args)
        from .corpus import Sentence

        train_sentences = [Sentence(r.sent_id, r.text) for r in train_records]
        vocab = build_vocabulary(train_sentences, tokenizer)
        X = stack(
            [
                vectorize(s, vocab, tokenizer, binary=args.binary_bow)
                for s in train_sentences
            ]
        )
        vocab_hash = vocab.content_hash()
        extra = {**tok_meta, "vocab": vocab.index, "binary_bow": args.binary_bow}
        print(f"vocabulary size: {vocab.size}")
    else:
        if not args.embeddings:
            raise ParseError("--embeddings is required with --features embeddings")
        table = load_embedding_table(args.embeddings)
        X = table.matrix([r.sent_id for r in train_records])
        vocab_hash = ""
        extra = {"dimension": table.dimension}

    trainer = train_linear_ovr if args.annotator == "linear" else train_boosted_ovr
    model = trainer(X, Y, cfg)
    save_model(
        model,
        args.out,
        cfg,
        vocab_hash=vocab_hash,
        feature_kind=args.features,
        extra=extra,
    )
    print(f"trained {args.annotator} on {len(train_records)} sentences -> {args.out}")
    return EXIT_OK


def cmd_predict(args) -> int:
    model, meta = load_model(args.model)
    records = read_sentences_jsonl(args.corpus)
    split = _load_split(args.split) if args.split else None
    records = filter_subset(records, split, args.subset)
    if not records:
        raise MissingSplit("no sentences selected")
    sent_ids = [r.sent_id for r in records]

    if meta["feature_kind"] == "bow":
        from .corpus import Sentence
        from .features import Vocabulary

        extra = meta.get("extra", {})
        vocab = Vocabulary(index=extra["vocab"])
        if args.tokenizer_file or extra.get("tokenizer") == "file":
            tok_file = args.tokenizer_file or extra.get("tokenizer_file")
            tokenizer = load_subword_tokenizer(tok_file)
        else:
            tokenizer = regex_tokenizer
        X = stack(
            [
                vectorize(Sentence(r.sent_id, r.text), vocab, tokenizer,
                          binary=extra.get("binary_bow", False))
                for r in records
            ]
        )
    else:
        if not args.embeddings:
            raise ParseError("--embeddings is required for an embeddings model")
        table = load_embedding_table(args.embeddings)
        X = table.matrix(sent_ids)

    name = args.annotator_name or f"{meta['kind']}:{meta['config_hash']}"
    preds = model_predict(model, X, sent_ids=sent_ids, annotator=name,
                          config_hash=meta["config_hash"])
    preds.save_jsonl(args.out)
    print(f"scored {len(sent_ids)} sentences -> {args.out}")
    return EXIT_OK


def cmd_annotate_llm(args) -> int:
    records = read_sentences_jsonl(args.corpus)
    split = _load_split(args.split) if args.split else None
    records = filter_subset(records, split, args.subset)
    if args.limit:
        records = records[: args.limit]
    cfg = AnnotatorConfig(
        endpoint=args.endpoint,
        model=args.model,
        credential_env=args.credential_env,
        temperature=args.temperature,
        max_retries=args.max_retries,
        backoff=args.backoff,
        cache_dir=args.cache_dir,
        max_in_flight=args.jobs,
    )
    backend = HttpChatBackend(cfg)
    contexts = [r.context() for r in records]
    preds, summary = run_batch(contexts, cfg, backend, args.variant)
    preds.save_jsonl(args.out)
    print(
        f"annotated {summary.n_sentences} sentences "
        f"({summary.n_failed} failed, {summary.n_abstains} abstains, "
        f"{summary.n_network_turns} backend turns, {summary.n_cached_turns} cached) "
        f"-> {args.out}"
    )
    if summary.n_failed:
        for sent_id, error in summary.failures[:10]:
            print(f"  failed {sent_id}: {error}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_lexicon_annotate(args) -> int:
    records = read_sentences_jsonl(args.corpus)
    lexicon = EmotionLexicon.load_tsv(args.lexicon)
    scores = {
        r.sent_id: np.asarray(lexicon_annotate(r.text, lexicon).as_ints(), dtype=float)
        for r in records
    }
    preds = PredictionSet(scores=scores, annotator="lexicon")
    preds.save_jsonl(args.out)
    print(f"annotated {len(records)} sentences -> {args.out}")
    return EXIT_OK


def _load_eval_inputs(args):
    records = read_sentences_jsonl(args.gold)
    gold = gold_map(records)
    preds = PredictionSet.load_jsonl(args.pred)
    pred_bits = threshold_predictions(preds, args.threshold)
    unknown = set(pred_bits) - set(gold)
    if unknown:
        raise ParseError(
            f"{len(unknown)} predicted ids missing from gold "
            f"(e.g. {sorted(unknown)[:3]})"
        )
    # Predictions may cover a subset (e.g. test only); evaluate on it.
    gold = {sid: gold[sid] for sid in pred_bits}
    return records, gold, preds, pred_bits


def cmd_evaluate(args) -> int:
    _, gold, preds, pred_bits = _load_eval_inputs(args)
    n_violations = sum(1 for v in pred_bits.values() if validate_vector(v))
    if args.strict and n_violations:
        raise ParseError(
            f"{n_violations} prediction vectors violate the derivation rules"
        )
    report = ev.prf1(
        gold,
        pred_bits,
        metadata={
            "annotator": preds.annotator,
            "threshold": args.threshold,
            "n_sentences": len(gold),
            "derivation_violations": n_violations,
        },
    )
    print(report.to_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(report.to_json())
            f.write("\n")
    return EXIT_OK


def cmd_analyze(args) -> int:
    records, gold, preds, pred_bits = _load_eval_inputs(args)
    os.makedirs(args.out_dir, exist_ok=True)
    ids = sorted(gold)
    G = [gold[i] for i in ids]
    P = [pred_bits[i] for i in ids]

    for task in ("A", "B", "C", "D"):
        matrix = ev.confusion_matrix(task, G, P)
        matrix.to_csv(os.path.join(args.out_dir, f"confusion_{task}.csv"))

    kappa = {}
    for label in CANONICAL_ORDER:
        value = ev.cohen_kappa([g[label] for g in G], [p[label] for p in P])
        kappa[label] = None if value != value else value  # NaN -> null
    with open(os.path.join(args.out_dir, "kappa.json"), "w", encoding="utf-8") as f:
        json.dump(kappa, f, indent=2, sort_keys=True)

    tables = {
        "cooccurrence": ev.cooccurrence(G),
        "mode_given_category": ev.mode_f1_by_category(G, P),
        "category_given_mode": ev.category_f1_by_mode(G, P),
    }
    for name, table in tables.items():
        with open(os.path.join(args.out_dir, f"{name}.txt"), "w", encoding="utf-8") as f:
            f.write(table.to_text())
            f.write("\n")
        with open(os.path.join(args.out_dir, f"{name}.json"), "w", encoding="utf-8") as f:
            json.dump(table.to_dict(), f, indent=2)

    pmap = load_polarity_map(args.polarity_map) if args.polarity_map else None
    gold_pol = [project_polarity(g, pmap) for g in G]
    pred_pol = [project_polarity(p, pmap) for p in P]
    polarity_report = ev.polarity_metrics(
        gold_pol, pred_pol, metadata={"annotator": preds.annotator, "source": "projected"}
    )
    with open(os.path.join(args.out_dir, "polarity.json"), "w", encoding="utf-8") as f:
        f.write(polarity_report.to_json())
        f.write("\n")

    if args.polarity_lexicon:
        lexicon = PolarityLexicon.load_tsv(args.polarity_lexicon)
        by_id = {r.sent_id: r for r in records}
        lex_pol = [polarity_score(by_id[i].text, lexicon) for i in ids]
        lex_report = ev.polarity_metrics(
            gold_pol, lex_pol, metadata={"annotator": "polarity-lexicon"}
        )
        with open(
            os.path.join(args.out_dir, "polarity_lexicon.json"), "w", encoding="utf-8"
        ) as f:
            f.write(lex_report.to_json())
            f.write("\n")

    if args.agreement:
        judgments = []
        with open(args.agreement, encoding="utf-8") as f:
            for line in f:
                if line.strip():
                    rec = json.loads(line)
                    judgments.append((rec["source"], bool(rec["agree"])))
        rates = ev.expert_agreement_rate(judgments)
        with open(os.path.join(args.out_dir, "agreement.json"), "w", encoding="utf-8") as f:
            json.dump(rates, f, indent=2, sort_keys=True)

    print(f"analysis written to {args.out_dir}")
    return EXIT_OK


_COMMANDS = {
    "prepare": cmd_prepare,
    "split": cmd_split,
    "stats": cmd_stats,
    "train": cmd_train,
    "predict": cmd_predict,
    "annotate-llm": cmd_annotate_llm,
    "lexicon-annotate": cmd_lexicon_annotate,
    "evaluate": cmd_evaluate,
    "analyze": cmd_analyze,
}


def run(argv: list[str]) -> int:
    try:
        args = _apply_config(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as e:
        return int(e.code or 0)
    except BackendError as e:
        print(f"backend error: {e}", file=sys.stderr)
        return EXIT_IO
    except (FileNotFoundError, PermissionError, IsADirectoryError) as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO
    except EmomodesError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
