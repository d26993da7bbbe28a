"""Label taxonomy and the rules deriving presence/type bits from modes and categories.

Every sentence annotation is a vector of 19 booleans: one presence bit,
four modes of expression, two emotion types, and twelve emotional
categories. Presence and types are never annotated directly; they are
derived from the modes and categories carried by the sentence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownLabel, WrongArity

MODES: tuple[str, ...] = ("labeled", "behavioral", "displayed", "suggested")

CATEGORIES: tuple[str, ...] = (
    "anger",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "admiration",
    "embarrassment",
    "guilt",
    "jealousy",
    "pride",
    "other",
)

TYPES: tuple[str, ...] = ("basic", "complex")

BASIC_SET: frozenset[str] = frozenset(
    {"anger", "disgust", "fear", "joy", "sadness", "surprise"}
)
COMPLEX_SET: frozenset[str] = frozenset(
    {"admiration", "embarrassment", "guilt", "jealousy", "pride"}
)
# "other" belongs to neither type.

# Fixed vector layout. Index 0 is the presence bit, 1-4 the modes,
# 5-6 the types, 7-18 the categories.
CANONICAL_ORDER: tuple[str, ...] = (
    "emotional",
    "labeled",
    "behavioral",
    "displayed",
    "suggested",
    "basic",
    "complex",
    "admiration",
    "other",
    "anger",
    "guilt",
    "disgust",
    "embarrassment",
    "pride",
    "jealousy",
    "joy",
    "fear",
    "surprise",
    "sadness",
)

N_LABELS = 19

LABEL_INDEX: dict[str, int] = {name: i for i, name in enumerate(CANONICAL_ORDER)}

MODE_INDICES: tuple[int, ...] = tuple(LABEL_INDEX[m] for m in MODES)
CATEGORY_INDICES: tuple[int, ...] = tuple(LABEL_INDEX[c] for c in CATEGORIES)

# Task → labels, in canonical order within each task.
TASK_LABELS: dict[str, tuple[str, ...]] = {
    "A": ("emotional",),
    "B": MODES,
    "C": TYPES,
    "D": tuple(sorted(CATEGORIES, key=LABEL_INDEX.__getitem__)),
}


@dataclass(frozen=True)
class LabelSchema:
    """The full taxonomy: modes, categories, types, and the vector layout."""

    modes: tuple[str, ...] = MODES
    categories: tuple[str, ...] = CATEGORIES
    types: tuple[str, ...] = TYPES
    basic_set: frozenset[str] = BASIC_SET
    complex_set: frozenset[str] = COMPLEX_SET
    canonical_order: tuple[str, ...] = CANONICAL_ORDER

    def __post_init__(self):
        assert len(self.modes) == 4
        assert len(self.categories) == 12
        assert len(self.types) == 2
        assert len(self.canonical_order) == N_LABELS
        assert len(set(self.canonical_order)) == N_LABELS
        assert not (self.basic_set & self.complex_set)
        assert "other" not in self.basic_set | self.complex_set


SCHEMA = LabelSchema()


@dataclass(frozen=True)
class Violation:
    """One derivation-rule violation found by validate_vector."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class LabelVector:
    """A 19-boolean sentence annotation in canonical order."""

    bits: tuple[bool, ...]

    def __post_init__(self):
        if len(self.bits) != N_LABELS:
            raise WrongArity(f"expected {N_LABELS} bits, got {len(self.bits)}")

    @classmethod
    def from_bits(cls, bits: Iterable[object]) -> "LabelVector":
        return cls(tuple(bool(b) for b in bits))

    @classmethod
    def empty(cls) -> "LabelVector":
        return cls((False,) * N_LABELS)

    def __getitem__(self, label: str | int) -> bool:
        if isinstance(label, str):
            try:
                label = LABEL_INDEX[label]
            except KeyError:
                raise UnknownLabel(label) from None
        return self.bits[label]

    def __iter__(self):
        return iter(self.bits)

    def as_ints(self) -> list[int]:
        return [int(b) for b in self.bits]

    @property
    def modes(self) -> frozenset[str]:
        return frozenset(m for m in MODES if self[m])

    @property
    def categories(self) -> frozenset[str]:
        return frozenset(c for c in CATEGORIES if self[c])

    def set_labels(self) -> frozenset[str]:
        return frozenset(n for n in CANONICAL_ORDER if self[n])


def compose_vector(modes: Iterable[str], categories: Iterable[str]) -> LabelVector:
    """Build the 19-vector for a set of modes and categories.

    The presence bit is set iff any mode or category is set; the basic and
    complex bits are set iff a basic/complex category is set. Raises
    UnknownLabel for identifiers outside the schema.
    """
    mode_set = set(modes)
    cat_set = set(categories)
    for m in mode_set:
        if m not in MODES:
            raise UnknownLabel(f"unknown mode: {m!r}")
    for c in cat_set:
        if c not in CATEGORIES:
            raise UnknownLabel(f"unknown category: {c!r}")

    bits = [False] * N_LABELS
    for m in mode_set:
        bits[LABEL_INDEX[m]] = True
    for c in cat_set:
        bits[LABEL_INDEX[c]] = True
    bits[LABEL_INDEX["emotional"]] = bool(mode_set or cat_set)
    bits[LABEL_INDEX["basic"]] = bool(cat_set & BASIC_SET)
    bits[LABEL_INDEX["complex"]] = bool(cat_set & COMPLEX_SET)
    return LabelVector(tuple(bits))


def validate_vector(v: LabelVector | Sequence[object]) -> list[Violation]:
    """Check the derivation invariants; return one descriptor per violated rule.

    External vectors (annotator output) may legitimately violate these
    rules, so violations are reported, not raised. Raises WrongArity if
    the input does not have 19 entries.
    """
    if not isinstance(v, LabelVector):
        v = LabelVector.from_bits(v)

    out: list[Violation] = []
    has_mode = bool(v.modes)
    has_cat = bool(v.categories)
    if v["emotional"] and not (has_mode or has_cat):
        out.append(
            Violation(
                "PresenceWithoutEvidence",
                "emotional is set but no mode and no category is",
            )
        )
    if (has_mode or has_cat) and not v["emotional"]:
        out.append(
            Violation(
                "EvidenceWithoutPresence",
                "a mode or category is set but emotional is not",
            )
        )
    has_basic_cat = bool(v.categories & BASIC_SET)
    has_complex_cat = bool(v.categories & COMPLEX_SET)
    if v["basic"] != has_basic_cat:
        code = "BasicWithoutCategory" if v["basic"] else "BasicNotDerived"
        out.append(Violation(code, "basic bit disagrees with basic categories"))
    if v["complex"] != has_complex_cat:
        code = "ComplexWithoutCategory" if v["complex"] else "ComplexNotDerived"
        out.append(Violation(code, "complex bit disagrees with complex categories"))
    return out
