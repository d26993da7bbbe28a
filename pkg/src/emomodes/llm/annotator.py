"""Turn-by-turn sentence annotation against a chat backend, with caching,
bounded concurrency, and batch summaries.

The protocol is stateful: each of the 19 questions is sent with the full
conversation so far, and the backend's reply is appended before the next
question. Replies that parse to neither yes nor no count as abstentions;
an abstention scores the label negative but is accounted separately.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from ..corpus import ContextTriple
from ..errors import BackendError
from ..labels import CANONICAL_ORDER, LabelVector
from .client import AnnotatorConfig, ChatBackend, NullCache, cache_key, make_cache
from .prompts import PROMPT_SPECS, QUESTION_ORDER, build_conversation

_LEADING_JUNK = re.compile(r"^[\s\"'«»\-–—.,;:!?()\[\]*]+")


def parse_binary_response(text: str) -> Optional[bool]:
    """Leading oui -> True, leading non -> False, anything else -> None
    (abstain). Case-insensitive and tolerant of leading punctuation."""
    cleaned = _LEADING_JUNK.sub("", text or "").lower()
    if cleaned.startswith("oui") and not cleaned[3:4].isalpha():
        return True
    if cleaned.startswith("non") and not cleaned[3:4].isalpha():
        return False
    return None


@dataclass
class SentenceAnnotation:
    sent_id: str
    answers: dict[str, Optional[bool]]  # canonical label -> yes/no/abstain
    transcript: list[dict]
    abstains: int
    cached_turns: int

    def vector(self) -> LabelVector:
        # Raw answers: no derivation applied; abstains score negative.
        return LabelVector.from_bits(
            self.answers[label] is True for label in CANONICAL_ORDER
        )

    def scores(self) -> np.ndarray:
        return np.asarray(
            [1.0 if self.answers[l] is True else 0.0 for l in CANONICAL_ORDER]
        )


def annotate_sentence(
    ctx: ContextTriple,
    cfg: AnnotatorConfig,
    backend: ChatBackend,
    variant: str,
    specs=PROMPT_SPECS,
    cache=None,
) -> SentenceAnnotation:
    """Run the 19-question conversation for one sentence.

    Every turn is cached under the hash of the conversation prefix, so a
    rerun replays from disk without touching the backend. On backend
    failure the partial transcript is preserved on the raised error.
    """
    conversation = build_conversation(ctx, specs=specs, variant=variant)
    cache = cache if cache is not None else make_cache(cfg)
    replies: list[str] = []
    abstains = 0
    cached_turns = 0
    answers_in_order: list[Optional[bool]] = []
    for _ in range(len(conversation.user_turns)):
        messages = conversation.as_messages(tuple(replies))
        key = cache_key(messages, cfg.model, cfg.temperature)
        reply = cache.get(key)
        if reply is None:
            try:
                reply = backend.complete(messages, cfg.model, cfg.temperature)
            except BackendError as e:
                e.transcript = messages
                raise
            cache.put(key, reply)
        else:
            cached_turns += 1
        replies.append(reply)
        answer = parse_binary_response(reply)
        if answer is None:
            abstains += 1
        answers_in_order.append(answer)
    answers = dict(zip(QUESTION_ORDER, answers_in_order))
    transcript = conversation.as_messages(tuple(replies[:-1])) + [
        {"role": "assistant", "content": replies[-1]}
    ]
    return SentenceAnnotation(
        sent_id=ctx.target.sent_id,
        answers=answers,
        transcript=transcript,
        abstains=abstains,
        cached_turns=cached_turns,
    )


@dataclass
class BatchSummary:
    n_sentences: int = 0
    n_failed: int = 0
    n_abstains: int = 0
    n_cached_turns: int = 0
    n_network_turns: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n_sentences": self.n_sentences,
            "n_failed": self.n_failed,
            "n_abstains": self.n_abstains,
            "n_cached_turns": self.n_cached_turns,
            "n_network_turns": self.n_network_turns,
            "failures": [{"sent_id": s, "error": e} for s, e in self.failures],
        }


def run_batch(
    contexts: Iterable[ContextTriple] | Sequence[ContextTriple],
    cfg: AnnotatorConfig,
    backend: ChatBackend,
    variant: str,
    specs=PROMPT_SPECS,
):
    """Annotate a corpus slice. Returns (PredictionSet, BatchSummary).

    At most ``cfg.max_in_flight`` sentences run concurrently; the turns
    within a sentence stay strictly sequential. Per-sentence failures are
    collected, not fatal. Resumable: cached turns cost no backend calls.
    """
    from ..classifiers.common import PredictionSet

    contexts = list(contexts)
    cache = make_cache(cfg)
    summary = BatchSummary()
    results: dict[str, SentenceAnnotation] = {}

    def work(ctx: ContextTriple):
        return annotate_sentence(
            ctx, cfg, backend, variant, specs=specs, cache=cache
        )

    if cfg.max_in_flight == 1:
        outcomes = []
        for ctx in contexts:
            try:
                outcomes.append((ctx, work(ctx), None))
            except BackendError as e:
                outcomes.append((ctx, None, e))
    else:
        outcomes = []
        with ThreadPoolExecutor(max_workers=cfg.max_in_flight) as pool:
            futures = [(ctx, pool.submit(work, ctx)) for ctx in contexts]
            for ctx, fut in futures:
                try:
                    outcomes.append((ctx, fut.result(), None))
                except BackendError as e:
                    outcomes.append((ctx, None, e))

    for ctx, annotation, error in outcomes:
        summary.n_sentences += 1
        if error is not None:
            summary.n_failed += 1
            summary.failures.append((ctx.target.sent_id, str(error)))
            continue
        results[annotation.sent_id] = annotation
        summary.n_abstains += annotation.abstains
        summary.n_cached_turns += annotation.cached_turns
        summary.n_network_turns += (
            len(annotation.answers) - annotation.cached_turns
        )

    scores = {sid: ann.scores() for sid, ann in results.items()}
    preds = PredictionSet(
        scores=scores,
        annotator=f"llm:{variant}",
        extras=summary.to_dict(),
    )
    return preds, summary
