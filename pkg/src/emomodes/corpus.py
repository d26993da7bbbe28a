"""Corpus ingestion, segment-to-sentence merge, context windows, split, statistics.

Corpora arrive pre-sentencized as JSONL, one document per line:

    {"doc_id": str, "genre": str, "sentences": [str, ...],
     "segments": [{"start": int, "end": int, "mode": str,
                   "category": str, "annotator": str}, ...]}

Segment offsets refer to the concatenation of the document's sentences
joined by a single space. That convention is this artifact's contract;
upstream data must be exported accordingly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    DuplicateDocId,
    EmptyCorpus,
    IndexOutOfRange,
    MissingGold,
    OffsetOutOfRange,
    ParseError,
)
from .labels import CANONICAL_ORDER, CATEGORIES, MODES, LabelVector, compose_vector

GENRES = ("journalistic", "encyclopedic", "novel")
SPLITS = ("train", "dev", "test")


@dataclass
class Sentence:
    sent_id: str
    text: str
    gold: Optional[LabelVector] = None


@dataclass
class SegmentAnnotation:
    """An expert-annotated emotional unit: a character span with one mode
    and one category."""

    doc_id: str
    char_start: int
    char_end: int
    mode: str
    category: str
    annotator_id: str


@dataclass
class Document:
    doc_id: str
    genre: str
    sentences: list[Sentence]

    def sentence_spans(self) -> list[tuple[int, int]]:
        """Character span of each sentence in the space-joined document text."""
        spans = []
        pos = 0
        for s in self.sentences:
            spans.append((pos, pos + len(s.text)))
            pos += len(s.text) + 1  # the joining space
        return spans

    @property
    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)


@dataclass
class ContextTriple:
    """A target sentence with its in-document neighbours (absent at boundaries)."""

    previous: Optional[str]
    target: Sentence
    next: Optional[str]


@dataclass
class Corpus:
    documents: list[Document]
    segments: dict[str, list[SegmentAnnotation]] = field(default_factory=dict)

    def doc(self, doc_id: str) -> Document:
        for d in self.documents:
            if d.doc_id == doc_id:
                return d
        raise KeyError(doc_id)

    def sentences(self) -> Iterable[Sentence]:
        for d in self.documents:
            yield from d.sentences

    @property
    def n_texts(self) -> int:
        return len(self.documents)

    @property
    def n_sentences(self) -> int:
        return sum(len(d.sentences) for d in self.documents)

    @property
    def n_words(self) -> int:
        # A word is a maximal non-whitespace run.
        return sum(len(s.text.split()) for s in self.sentences())


@dataclass
class SplitAssignment:
    assignment: dict[str, str]  # doc_id -> train|dev|test
    seed: int

    def docs_in(self, subset: str) -> list[str]:
        return [d for d, s in self.assignment.items() if s == subset]

    def to_json(self) -> str:
        return json.dumps(
            {"seed": self.seed, "assignment": self.assignment},
            ensure_ascii=False,
            sort_keys=True,
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SplitAssignment":
        data = json.loads(text)
        assignment = dict(data["assignment"])
        for doc_id, subset in assignment.items():
            if subset not in SPLITS:
                raise ParseError(f"unknown split {subset!r} for doc {doc_id!r}")
        return cls(assignment=assignment, seed=int(data["seed"]))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())
            f.write("\n")

    @classmethod
    def load(cls, path) -> "SplitAssignment":
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())


def _parse_document(record: dict, line_no: int) -> tuple[Document, list[SegmentAnnotation]]:
    try:
        doc_id = record["doc_id"]
        genre = record["genre"]
        raw_sentences = record["sentences"]
    except KeyError as e:
        raise ParseError(f"missing document field {e}", line_no) from None
    if not isinstance(doc_id, str) or not doc_id:
        raise ParseError("doc_id must be a non-empty string", line_no)
    if genre not in GENRES:
        raise ParseError(f"unknown genre {genre!r}", line_no)
    if not isinstance(raw_sentences, list) or not raw_sentences:
        raise ParseError("sentences must be a non-empty list", line_no)

    sentences = []
    for i, text in enumerate(raw_sentences):
        if not isinstance(text, str) or not text.strip():
            raise ParseError(f"sentence {i} of {doc_id!r} is empty", line_no)
        sentences.append(Sentence(sent_id=f"{doc_id}:{i}", text=text))
    doc = Document(doc_id=doc_id, genre=genre, sentences=sentences)

    segments = []
    for j, seg in enumerate(record.get("segments", [])):
        try:
            start = int(seg["start"])
            end = int(seg["end"])
            mode = seg["mode"]
            category = seg["category"]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"segment {j} of {doc_id!r}: {e}", line_no) from None
        if mode not in MODES:
            raise ParseError(f"segment {j} of {doc_id!r}: unknown mode {mode!r}", line_no)
        if category not in CATEGORIES:
            raise ParseError(
                f"segment {j} of {doc_id!r}: unknown category {category!r}", line_no
            )
        if not (0 <= start < end):
            raise ParseError(
                f"segment {j} of {doc_id!r}: bad offsets [{start}, {end})", line_no
            )
        segments.append(
            SegmentAnnotation(
                doc_id=doc_id,
                char_start=start,
                char_end=end,
                mode=mode,
                category=category,
                annotator_id=str(seg.get("annotator", "")),
            )
        )
    return doc, segments


def ingest_corpus(path) -> Corpus:
    """Read a JSONL corpus file. Raises ParseError (with line number) or
    DuplicateDocId."""
    documents: list[Document] = []
    segments: dict[str, list[SegmentAnnotation]] = {}
    seen: set[str] = set()
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e.msg}", line_no) from None
            if not isinstance(record, dict):
                raise ParseError("document line must be a JSON object", line_no)
            doc, segs = _parse_document(record, line_no)
            if doc.doc_id in seen:
                raise DuplicateDocId(doc.doc_id)
            seen.add(doc.doc_id)
            documents.append(doc)
            segments[doc.doc_id] = segs
    return Corpus(documents=documents, segments=segments)


def merge_segments(doc: Document, segs: list[SegmentAnnotation]) -> Document:
    """Fill each sentence's gold vector from the segments overlapping it.

    A segment contributes its mode and category to every sentence it
    overlaps; sentences with no overlapping segment get the all-false
    vector. Modifies and returns ``doc``.
    """
    spans = doc.sentence_spans()
    doc_len = len(doc.text)
    per_sentence: list[tuple[set[str], set[str]]] = [
        (set(), set()) for _ in doc.sentences
    ]
    for seg in segs:
        if seg.char_end > doc_len:
            raise OffsetOutOfRange(
                f"segment [{seg.char_start}, {seg.char_end}) exceeds document "
                f"{doc.doc_id!r} of length {doc_len}"
            )
        for i, (s, e) in enumerate(spans):
            if seg.char_start < e and seg.char_end > s:
                per_sentence[i][0].add(seg.mode)
                per_sentence[i][1].add(seg.category)
    for sentence, (modes, cats) in zip(doc.sentences, per_sentence):
        sentence.gold = compose_vector(modes, cats)
    return doc


def merge_corpus(corpus: Corpus) -> Corpus:
    """merge_segments over every document."""
    for doc in corpus.documents:
        merge_segments(doc, corpus.segments.get(doc.doc_id, []))
    return corpus


def build_context(doc: Document, index: int) -> ContextTriple:
    """Target sentence with its adjacent sentences (None at document boundaries)."""
    if not (0 <= index < len(doc.sentences)):
        raise IndexOutOfRange(f"index {index} outside document {doc.doc_id!r}")
    prev = doc.sentences[index - 1].text if index > 0 else None
    nxt = doc.sentences[index + 1].text if index + 1 < len(doc.sentences) else None
    return ContextTriple(previous=prev, target=doc.sentences[index], next=nxt)


def iter_contexts(corpus: Corpus) -> Iterable[ContextTriple]:
    for doc in corpus.documents:
        for i in range(len(doc.sentences)):
            yield build_context(doc, i)


def grouped_split(
    corpus: Corpus,
    fractions: tuple[float, float, float] = (0.70, 0.10, 0.20),
    seed: int = 0,
) -> SplitAssignment:
    """Assign whole documents to train/dev/test, targeting sentence fractions.

    Documents are shuffled with the seeded PRNG (so equal-sized documents
    land deterministically but seed-dependently), then placed largest
    first into the subset with the largest remaining sentence deficit.
    Placing large documents first is what keeps the achieved fractions
    near the targets; a pure shuffle order can strand a huge document
    in an almost-full subset.
    """
    if not corpus.documents:
        raise EmptyCorpus("cannot split an empty corpus")
    if len(fractions) != len(SPLITS):
        raise ValueError("need one fraction per split")
    if any(f <= 0 for f in fractions):
        raise ValueError("fractions must be positive")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError("fractions must sum to 1")

    docs = list(corpus.documents)
    rng = random.Random(seed)
    rng.shuffle(docs)
    docs.sort(key=lambda d: -len(d.sentences))  # stable: shuffle breaks ties

    total = corpus.n_sentences
    targets = [f * total for f in fractions]
    assigned = [0, 0, 0]
    assignment: dict[str, str] = {}
    for doc in docs:
        deficits = [targets[k] - assigned[k] for k in range(3)]
        k = max(range(3), key=lambda i: (deficits[i], -i))  # ties -> earlier split
        assignment[doc.doc_id] = SPLITS[k]
        assigned[k] += len(doc.sentences)
    # Report in corpus order, not shuffle order.
    ordered = {d.doc_id: assignment[d.doc_id] for d in corpus.documents}
    return SplitAssignment(assignment=ordered, seed=seed)


@dataclass
class DistributionTable:
    """Per-subset corpus statistics: sizes and the share of sentences
    carrying each label."""

    subsets: dict[str, dict]  # subset -> {texts, sentences, words, label_pct}

    def to_text(self) -> str:
        names = list(self.subsets)
        width = max(len(l) for l in CANONICAL_ORDER) + 2
        lines = ["".ljust(width) + "".join(n.rjust(12) for n in names)]
        for row in ("texts", "sentences", "words"):
            lines.append(
                row.ljust(width)
                + "".join(str(self.subsets[n][row]).rjust(12) for n in names)
            )
        for label in CANONICAL_ORDER:
            lines.append(
                label.ljust(width)
                + "".join(
                    f"{self.subsets[n]['label_pct'][label]:.2f}%".rjust(12)
                    for n in names
                )
            )
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(self.subsets, ensure_ascii=False, sort_keys=True, indent=2)


def corpus_stats(
    corpus: Corpus, split: Optional[SplitAssignment] = None
) -> DistributionTable:
    """Text/sentence/word counts and per-label sentence percentages,
    per subset when a split is given (plus the 'all' column), otherwise
    for the whole corpus."""
    for s in corpus.sentences():
        if s.gold is None:
            raise MissingGold(f"sentence {s.sent_id} has no gold vector")

    def summarize(docs: list[Document]) -> dict:
        n_sent = sum(len(d.sentences) for d in docs)
        n_words = sum(len(s.text.split()) for d in docs for s in d.sentences)
        counts = {label: 0 for label in CANONICAL_ORDER}
        for d in docs:
            for s in d.sentences:
                for label in CANONICAL_ORDER:
                    if s.gold[label]:
                        counts[label] += 1
        pct = {
            label: (100.0 * counts[label] / n_sent if n_sent else 0.0)
            for label in CANONICAL_ORDER
        }
        return {
            "texts": len(docs),
            "sentences": n_sent,
            "words": n_words,
            "label_pct": pct,
        }

    subsets: dict[str, dict] = {"all": summarize(corpus.documents)}
    if split is not None:
        for name in SPLITS:
            docs = [d for d in corpus.documents if split.assignment.get(d.doc_id) == name]
            subsets[name] = summarize(docs)
    return DistributionTable(subsets=subsets)
