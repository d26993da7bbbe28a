"""Sentence featurization: bag-of-tokens over a train-restricted vocabulary,
plus ingestion of precomputed sentence embeddings.

Two tokenizers are supported. The regex fallback splits on word characters
and keeps punctuation marks as their own tokens; it needs no external
files. When exact replication of a pretrained subword vocabulary is
wanted, a serialized tokenizer definition file can be loaded instead
(requires the optional ``tokenizers`` package).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from .corpus import Sentence
from .errors import DimensionMismatch, EmptyTrainingSet, UnknownSentence

Tokenizer = Callable[[str], list[str]]

_TOKEN_RE = re.compile(r"\w+|[^\w\s]", re.UNICODE)


def regex_tokenizer(text: str) -> list[str]:
    """Fallback tokenizer: word-character runs and single punctuation marks."""
    return _TOKEN_RE.findall(text)


def load_subword_tokenizer(path) -> Tokenizer:
    """Wrap a serialized subword tokenizer definition (tokenizers JSON file)."""
    try:
        from tokenizers import Tokenizer as HFTokenizer
    except ImportError as e:  # pragma: no cover - environment dependent
        raise ImportError(
            "subword tokenization needs the 'tokenizers' package; "
            "install it or use the regex fallback"
        ) from e
    tok = HFTokenizer.from_file(str(path))

    def tokenize(text: str) -> list[str]:
        return tok.encode(text).tokens

    return tokenize


@dataclass(frozen=True)
class Vocabulary:
    """Token -> dense column index, built from training sentences only."""

    index: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.index)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def content_hash(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for token, i in sorted(self.index.items(), key=lambda kv: kv[1]):
            h.update(f"{i}\t{token}\n".encode("utf-8"))
        return h.hexdigest()[:16]


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, value) pairs with an explicit dimension."""

    indices: tuple[int, ...]
    values: tuple[float, ...]
    dimension: int

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise DimensionMismatch("indices and values differ in length")
        prev = -1
        for i in self.indices:
            if not (prev < i < self.dimension):
                raise DimensionMismatch(
                    f"index {i} out of order or outside dimension {self.dimension}"
                )
            prev = i
        if any(not np.isfinite(v) for v in self.values):
            raise DimensionMismatch("values must be finite")

    def l1(self) -> float:
        return float(sum(abs(v) for v in self.values))


def build_vocabulary(
    train_sentences: Sequence[Sentence], tokenizer: Tokenizer = regex_tokenizer
) -> Vocabulary:
    """Index every distinct token of the training sentences, in first-seen
    order (deterministic). Raises EmptyTrainingSet when there is nothing
    to index."""
    if not train_sentences:
        raise EmptyTrainingSet("no training sentences")
    index: dict[str, int] = {}
    for s in train_sentences:
        for token in tokenizer(s.text):
            if token not in index:
                index[token] = len(index)
    if not index:
        raise EmptyTrainingSet("training sentences produced no tokens")
    return Vocabulary(index=index)


def vectorize(
    sentence: Sentence, vocab: Vocabulary, tokenizer: Tokenizer = regex_tokenizer,
    binary: bool = False,
) -> SparseVector:
    """Bag-of-tokens counts over the vocabulary; out-of-vocabulary tokens
    are dropped. ``binary`` switches counts to 0/1 presence."""
    counts: dict[int, float] = {}
    for token in tokenizer(sentence.text):
        col = vocab.index.get(token)
        if col is not None:
            counts[col] = counts.get(col, 0.0) + 1.0
    items = sorted(counts.items())
    values = [1.0 if binary else v for _, v in items]
    return SparseVector(
        indices=tuple(i for i, _ in items),
        values=tuple(values),
        dimension=vocab.size,
    )


def stack(vectors: Sequence[SparseVector]) -> sp.csr_matrix:
    """Stack SparseVectors into a CSR matrix for the trainers."""
    if not vectors:
        raise EmptyTrainingSet("no vectors to stack")
    dim = vectors[0].dimension
    for v in vectors:
        if v.dimension != dim:
            raise DimensionMismatch("vectors disagree on dimension")
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for v in vectors:
        indices.extend(v.indices)
        data.extend(v.values)
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.float64), np.asarray(indices, dtype=np.int32),
         np.asarray(indptr, dtype=np.int32)),
        shape=(len(vectors), dim),
    )


class EmbeddingTable:
    """sent_id -> dense vector, all of one dimension."""

    def __init__(self, vectors: dict[str, np.ndarray], dimension: int):
        self.vectors = vectors
        self.dimension = dimension

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, sent_id: str) -> bool:
        return sent_id in self.vectors

    def __getitem__(self, sent_id: str) -> np.ndarray:
        try:
            return self.vectors[sent_id]
        except KeyError:
            raise UnknownSentence(sent_id) from None

    def matrix(self, sent_ids: Sequence[str]) -> np.ndarray:
        return np.stack([self[s] for s in sent_ids])


def load_embedding_table(path) -> EmbeddingTable:
    """Read a TSV of ``sent_id<TAB>v1<TAB>...<TAB>vd`` rows. The dimension
    is fixed by the first row; later rows must match it."""
    vectors: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            sent_id, raw = parts[0], parts[1:]
            if dimension is None:
                dimension = len(raw)
                if dimension == 0:
                    raise DimensionMismatch(f"line {line_no}: row has no values")
            if len(raw) != dimension:
                raise DimensionMismatch(
                    f"line {line_no}: expected {dimension} values, got {len(raw)}"
                )
            vectors[sent_id] = np.asarray([float(x) for x in raw], dtype=np.float64)
    if dimension is None:
        raise DimensionMismatch("embedding file is empty")
    return EmbeddingTable(vectors=vectors, dimension=dimension)
