"""Corpus reading, label derivation, and model-input rendering.

This package talks to the annotation harness only through files: it reads
the corpus JSONL ({doc_id, genre, sentences, segments}) and split JSON
({seed, assignment}) and emits prediction JSONL rows of 19 scores in the
shared canonical label order. The derivation of presence/type bits from
segment modes and categories is re-implemented here on purpose, so the
exported class-weights file genuinely cross-checks the harness's own
computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

MODES = ("labeled", "behavioral", "displayed", "suggested")
CATEGORIES = (
    "anger", "disgust", "fear", "joy", "sadness", "surprise",
    "admiration", "embarrassment", "guilt", "jealousy", "pride", "other",
)
BASIC = frozenset({"anger", "disgust", "fear", "joy", "sadness", "surprise"})
COMPLEX = frozenset({"admiration", "embarrassment", "guilt", "jealousy", "pride"})

# Wire-format contract: score index i corresponds to this label order.
CANONICAL_ORDER = (
    "emotional", "labeled", "behavioral", "displayed", "suggested",
    "basic", "complex", "admiration", "other", "anger", "guilt",
    "disgust", "embarrassment", "pride", "jealousy", "joy", "fear",
    "surprise", "sadness",
)
LABEL_INDEX = {name: i for i, name in enumerate(CANONICAL_ORDER)}
N_LABELS = 19
EMOTIONAL_INDEX = LABEL_INDEX["emotional"]

INPUT_TEMPLATE = "before: {previous}</s>current: {target}</s>after: {next}</s>"


@dataclass
class Example:
    sent_id: str
    doc_id: str
    previous: Optional[str]
    target: str
    next: Optional[str]
    labels: list[int]  # 19 bits, canonical order


def render_input(previous: Optional[str], target: str, nxt: Optional[str]) -> str:
    """Byte-exact triple template; absent neighbours render empty."""
    return INPUT_TEMPLATE.format(
        previous=previous or "", target=target, next=nxt or ""
    )


def derive_bits(modes: set[str], categories: set[str]) -> list[int]:
    bits = [0] * N_LABELS
    for m in modes:
        bits[LABEL_INDEX[m]] = 1
    for c in categories:
        bits[LABEL_INDEX[c]] = 1
    bits[LABEL_INDEX["emotional"]] = int(bool(modes or categories))
    bits[LABEL_INDEX["basic"]] = int(bool(categories & BASIC))
    bits[LABEL_INDEX["complex"]] = int(bool(categories & COMPLEX))
    return bits


def load_examples(corpus_path) -> list[Example]:
    """Parse the corpus JSONL and merge segments to sentence-level labels.

    Segment offsets refer to the document's sentences joined by single
    spaces; a segment feeds every sentence it overlaps.
    """
    examples: list[Example] = []
    with open(corpus_path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            doc = json.loads(line)
            sentences = doc["sentences"]
            spans = []
            pos = 0
            for text in sentences:
                spans.append((pos, pos + len(text)))
                pos += len(text) + 1
            per_sentence = [(set(), set()) for _ in sentences]
            for seg in doc.get("segments", []):
                for i, (s, e) in enumerate(spans):
                    if seg["start"] < e and seg["end"] > s:
                        per_sentence[i][0].add(seg["mode"])
                        per_sentence[i][1].add(seg["category"])
            for i, text in enumerate(sentences):
                modes, cats = per_sentence[i]
                examples.append(
                    Example(
                        sent_id=f"{doc['doc_id']}:{i}",
                        doc_id=doc["doc_id"],
                        previous=sentences[i - 1] if i > 0 else None,
                        target=text,
                        next=sentences[i + 1] if i + 1 < len(sentences) else None,
                        labels=derive_bits(modes, cats),
                    )
                )
    return examples


def load_split(split_path) -> dict[str, str]:
    with open(split_path, encoding="utf-8") as f:
        return dict(json.load(f)["assignment"])


def subset(examples: list[Example], split: dict[str, str], name: str) -> list[Example]:
    return [e for e in examples if split.get(e.doc_id) == name]


def class_weights(examples: list[Example], cap: float = 50.0) -> list[float]:
    """min(negatives/positives, cap) per label; cap when no positives."""
    n = len(examples)
    weights = []
    for j in range(N_LABELS):
        pos = sum(e.labels[j] for e in examples)
        if pos == 0:
            weights.append(float(cap))
        else:
            weights.append(min((n - pos) / pos, float(cap)))
    return weights


def truncate_triple(
    prev_tokens: list, target_tokens: list, next_tokens: list, budget: int
) -> tuple[list, list, list]:
    """Fit a token triple into ``budget``: context fields shrink first,
    the target last. The kept context hugs the target (tail of the
    previous sentence, head of the next)."""
    if budget <= 0:
        return [], [], []
    target = target_tokens[:budget]
    rest = budget - len(target)
    want_prev = min(len(prev_tokens), (rest + 1) // 2)
    want_next = min(len(next_tokens), rest - want_prev)
    # hand unused next-budget back to previous
    want_prev = min(len(prev_tokens), rest - want_next)
    prev = prev_tokens[len(prev_tokens) - want_prev :] if want_prev else []
    nxt = next_tokens[:want_next]
    return prev, target, nxt
