"""Sentence encoders behind one interface: embed a rendered triple into a
pooled hidden vector.

Two families. ``toy:dim=...,layers=...,heads=...,vocab=...,maxlen=...``
builds a small randomly initialized transformer over hash-bucketed
whitespace tokens; it exists so the two-stage recipe is testable on CPU
in seconds. Any other identifier is treated as a pretrained-transformers
model name or path (requires the ``transformers`` package) for the real
training runs.
"""

from __future__ import annotations

import zlib

import torch
import torch.nn as nn

from .data import truncate_triple

PAD_ID = 0
SEP_ID = 1
_RESERVED = 2


def parse_toy_spec(model_id: str) -> dict:
    spec = {"dim": 32, "layers": 1, "heads": 4, "vocab": 2048, "maxlen": 96}
    body = model_id[len("toy:"):]
    if body:
        for part in body.split(","):
            key, _, value = part.partition("=")
            if key not in spec:
                raise ValueError(f"unknown toy encoder option {key!r}")
            spec[key] = int(value)
    return spec


def hash_token(token: str, vocab: int) -> int:
    return _RESERVED + zlib.crc32(token.encode("utf-8")) % (vocab - _RESERVED)


class ToyEncoder(nn.Module):
    """Hash-bucket embeddings + a small transformer encoder, mean-pooled."""

    def __init__(self, dim: int, layers: int, heads: int, vocab: int, maxlen: int):
        super().__init__()
        self.vocab = vocab
        self.maxlen = maxlen
        self.hidden_size = dim
        self.token_embedding = nn.Embedding(vocab, dim, padding_idx=PAD_ID)
        self.position_embedding = nn.Embedding(maxlen, dim)
        layer = nn.TransformerEncoderLayer(
            d_model=dim,
            nhead=heads,
            dim_feedforward=2 * dim,
            batch_first=True,
            dropout=0.0,
        )
        # nested-tensor fast path disabled: plain masked attention keeps
        # repeated runs bit-identical
        self.encoder = nn.TransformerEncoder(
            layer, num_layers=layers, enable_nested_tensor=False
        )

    def _field_ids(self, text: str) -> list[int]:
        return [hash_token(t, self.vocab) for t in text.split()]

    def tokenize_triple(self, previous: str, target: str, nxt: str) -> list[int]:
        # 3 separators + the "before:/current:/after:" markers stay fixed;
        # context fields are truncated before the target is touched.
        markers = 3  # one SEP after each field
        budget = self.maxlen - markers
        prev_ids, tgt_ids, next_ids = truncate_triple(
            self._field_ids("before: " + previous),
            self._field_ids("current: " + target),
            self._field_ids("after: " + nxt),
            budget,
        )
        return prev_ids + [SEP_ID] + tgt_ids + [SEP_ID] + next_ids + [SEP_ID]

    def encode_batch(self, triples: list[tuple[str, str, str]]) -> torch.Tensor:
        ids = [self.tokenize_triple(p, t, n) for p, t, n in triples]
        width = max(len(x) for x in ids)
        batch = torch.full((len(ids), width), PAD_ID, dtype=torch.long)
        for i, row in enumerate(ids):
            batch[i, : len(row)] = torch.tensor(row, dtype=torch.long)
        return self(batch)

    def forward(self, token_ids: torch.Tensor) -> torch.Tensor:
        mask = token_ids == PAD_ID
        positions = torch.arange(token_ids.shape[1], device=token_ids.device)
        x = self.token_embedding(token_ids) + self.position_embedding(positions)
        hidden = self.encoder(x, src_key_padding_mask=mask)
        keep = (~mask).unsqueeze(-1).float()
        return (hidden * keep).sum(dim=1) / keep.sum(dim=1).clamp(min=1.0)


class TransformersEncoder(nn.Module):
    """Pretrained encoder loaded from a transformers model name/path."""

    def __init__(self, model_id: str, maxlen: int = 512):
        super().__init__()
        try:
            from transformers import AutoModel, AutoTokenizer
        except ImportError as e:  # pragma: no cover - environment dependent
            raise ImportError(
                "loading a pretrained encoder needs the 'transformers' package"
            ) from e
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModel.from_pretrained(model_id)
        self.maxlen = maxlen
        self.hidden_size = self.model.config.hidden_size

    def encode_batch(self, triples: list[tuple[str, str, str]]) -> torch.Tensor:
        from .data import render_input

        texts = [render_input(p, t, n) for p, t, n in triples]
        enc = self.tokenizer(
            texts,
            padding=True,
            truncation=True,
            max_length=self.maxlen,
            return_tensors="pt",
        )
        out = self.model(**enc).last_hidden_state
        mask = enc["attention_mask"].unsqueeze(-1).float()
        return (out * mask).sum(dim=1) / mask.sum(dim=1).clamp(min=1.0)


def build_encoder(model_id: str) -> nn.Module:
    if model_id.startswith("toy:") or model_id == "toy":
        spec = parse_toy_spec(model_id if ":" in model_id else "toy:")
        return ToyEncoder(**spec)
    return TransformersEncoder(model_id)


class SentenceClassifier(nn.Module):
    """Encoder plus a linear classification head of configurable width."""

    def __init__(self, encoder: nn.Module, n_outputs: int):
        super().__init__()
        self.encoder = encoder
        self.head = nn.Linear(encoder.hidden_size, n_outputs)

    @property
    def n_outputs(self) -> int:
        return self.head.out_features

    def replace_head(self, n_outputs: int) -> None:
        """Swap in a freshly initialized head (encoder weights kept)."""
        self.head = nn.Linear(self.encoder.hidden_size, n_outputs)

    def forward(self, triples: list[tuple[str, str, str]]) -> torch.Tensor:
        return self.head(self.encoder.encode_batch(triples))
