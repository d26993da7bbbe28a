from .annotator import (
    BatchSummary,
    SentenceAnnotation,
    annotate_sentence,
    parse_binary_response,
    run_batch,
)
from .client import (
    AnnotatorConfig,
    ChatBackend,
    HttpChatBackend,
    NullCache,
    ResponseCache,
    ScriptedBackend,
    cache_key,
)
from .prompts import (
    POSITIVES_ONLY,
    PROMPT_SPECS,
    QUESTION_ORDER,
    VARIANTS,
    WITH_COUNTEREXAMPLES,
    Conversation,
    LabelPromptSpec,
    build_conversation,
)

__all__ = [
    "AnnotatorConfig",
    "BatchSummary",
    "ChatBackend",
    "Conversation",
    "HttpChatBackend",
    "LabelPromptSpec",
    "NullCache",
    "POSITIVES_ONLY",
    "PROMPT_SPECS",
    "QUESTION_ORDER",
    "ResponseCache",
    "ScriptedBackend",
    "SentenceAnnotation",
    "VARIANTS",
    "WITH_COUNTEREXAMPLES",
    "annotate_sentence",
    "build_conversation",
    "cache_key",
    "parse_binary_response",
    "run_batch",
]
