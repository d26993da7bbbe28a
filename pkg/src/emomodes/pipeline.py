"""Sentence-level artifact files shared between pipeline stages.

``prepare`` flattens a merged corpus into one JSON line per sentence:

    {"sent_id": str, "doc_id": str, "genre": str, "index": int,
     "text": str, "previous": str|null, "next": str|null,
     "gold": [19 ints]}

Downstream stages (train, predict, annotate, evaluate) consume this file
instead of re-deriving spans and context windows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .corpus import Corpus, ContextTriple, Sentence, SplitAssignment, build_context
from .errors import MissingGold, ParseError
from .labels import N_LABELS, LabelVector


@dataclass
class SentenceRecord:
    sent_id: str
    doc_id: str
    genre: str
    index: int
    text: str
    previous: Optional[str]
    next: Optional[str]
    gold: Optional[LabelVector]

    def context(self) -> ContextTriple:
        return ContextTriple(
            previous=self.previous,
            target=Sentence(sent_id=self.sent_id, text=self.text, gold=self.gold),
            next=self.next,
        )


def write_sentences_jsonl(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for doc in corpus.documents:
            for i, sentence in enumerate(doc.sentences):
                ctx = build_context(doc, i)
                record = {
                    "sent_id": sentence.sent_id,
                    "doc_id": doc.doc_id,
                    "genre": doc.genre,
                    "index": i,
                    "text": sentence.text,
                    "previous": ctx.previous,
                    "next": ctx.next,
                    "gold": sentence.gold.as_ints() if sentence.gold else None,
                }
                f.write(json.dumps(record, ensure_ascii=False))
                f.write("\n")


def read_sentences_jsonl(path) -> list[SentenceRecord]:
    records: list[SentenceRecord] = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e.msg}", line_no) from None
            try:
                gold = raw.get("gold")
                if gold is not None:
                    if len(gold) != N_LABELS:
                        raise ParseError(
                            f"gold must have {N_LABELS} entries", line_no
                        )
                    gold = LabelVector.from_bits(gold)
                records.append(
                    SentenceRecord(
                        sent_id=raw["sent_id"],
                        doc_id=raw["doc_id"],
                        genre=raw.get("genre", ""),
                        index=int(raw.get("index", 0)),
                        text=raw["text"],
                        previous=raw.get("previous"),
                        next=raw.get("next"),
                        gold=gold,
                    )
                )
            except KeyError as e:
                raise ParseError(f"missing field {e}", line_no) from None
    return records


def filter_subset(
    records: list[SentenceRecord],
    split: Optional[SplitAssignment],
    subset: Optional[str],
) -> list[SentenceRecord]:
    if split is None or subset is None:
        return records
    return [r for r in records if split.assignment.get(r.doc_id) == subset]


def gold_map(records: list[SentenceRecord]) -> dict[str, LabelVector]:
    out: dict[str, LabelVector] = {}
    for r in records:
        if r.gold is None:
            raise MissingGold(f"sentence {r.sent_id} has no gold vector")
        out[r.sent_id] = r.gold
    return out
