"""Exception hierarchy shared across the toolkit."""


class EmomodesError(Exception):
    """Base class for all toolkit errors."""


class UnknownLabel(EmomodesError):
    """A mode/category/label identifier is not part of the schema."""


class WrongArity(EmomodesError):
    """A label vector does not have exactly 19 entries."""


class ParseError(EmomodesError):
    """An input file does not conform to its documented format.

    Carries the offending line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateDocId(EmomodesError):
    """Two documents in one corpus share a doc_id."""


class OffsetOutOfRange(EmomodesError):
    """A segment's character offsets fall outside the document text."""


class IndexOutOfRange(EmomodesError):
    """A sentence index is outside a document's range."""


class EmptyCorpus(EmomodesError):
    """An operation that needs documents was given none."""


class MissingGold(EmomodesError):
    """Gold label vectors are required but absent."""


class EmptyTrainingSet(EmomodesError):
    """Vocabulary construction was given no training sentences."""


class DimensionMismatch(EmomodesError):
    """Feature/embedding dimensions disagree."""


class UnknownSentence(EmomodesError):
    """A sentence id has no entry in an embedding table."""


class MissingSpec(EmomodesError):
    """The 19 prompt specifications are incomplete."""


class BackendError(EmomodesError):
    """A chat backend failed after exhausting retries.

    ``transcript`` preserves the turns completed before the failure.
    """

    def __init__(self, message: str, transcript: list | None = None):
        self.transcript = transcript or []
        super().__init__(message)


class MisalignedSets(EmomodesError):
    """Gold and predicted sentence sets do not line up."""


class LengthMismatch(EmomodesError):
    """Two judgment sequences have different lengths."""


class UnknownTask(EmomodesError):
    """Task id is not one of A, B, C, D."""


class EmptySubset(EmomodesError):
    """A conditional evaluation selected no sentences."""


class MissingSplit(EmomodesError):
    """A required train/dev/test assignment is absent."""


class SchemaViolation(EmomodesError):
    """A produced artifact failed its own schema self-check."""
