"""emomodes: sentence-level emotion annotation with modes of expression.

Each sentence carries 19 boolean labels: whether it is emotional, four
modes of expression (labeled, behavioral, displayed, suggested), two
emotion types (basic, complex), and twelve emotional categories. The
package ingests segment-annotated corpora, trains and runs classical,
lexicon, and LLM-prompted annotators, and evaluates everything through
one harness.
"""

__version__ = "0.1.0"

from .labels import (
    CANONICAL_ORDER,
    CATEGORIES,
    MODES,
    TASK_LABELS,
    TYPES,
    LabelVector,
    compose_vector,
    validate_vector,
)

__all__ = [
    "CANONICAL_ORDER",
    "CATEGORIES",
    "MODES",
    "TASK_LABELS",
    "TYPES",
    "LabelVector",
    "compose_vector",
    "validate_vector",
    "__version__",
]
