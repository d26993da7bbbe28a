"""Lexicon-driven baseline annotators.

An emotion lexicon maps surface forms either to an emotional category
(the directly-named, "labeled" mode) or to the behavioral mode with no
category. A polarity lexicon carries a negative and a positive weight
per term. Matching is case-insensitive token-sequence lookup, longest
match first; a consumed span blocks shorter matches inside it. No
lemmatization is attempted (documented limitation).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional

from .corpus import Sentence
from .errors import ParseError
from .labels import CATEGORIES, LabelVector, compose_vector

POSITIVE = "positive"
NEGATIVE = "negative"
NEUTRAL = "neutral"
POLARITIES = (POSITIVE, NEGATIVE, NEUTRAL)

# Word-character runs only: punctuation is stripped before matching.
_WORD_RE = re.compile(r"\w+", re.UNICODE)


def match_tokens(text: str) -> list[str]:
    return [t.lower() for t in _WORD_RE.findall(text)]


def _term_key(term: str) -> tuple[str, ...]:
    key = tuple(match_tokens(term))
    if not key:
        raise ParseError(f"lexicon term {term!r} has no word tokens")
    return key


@dataclass(frozen=True)
class EmotionEntry:
    kind: str  # "labeled" | "behavioral"
    category: Optional[str]  # exactly one category iff kind == "labeled"


class EmotionLexicon:
    def __init__(self, entries: dict[tuple[str, ...], EmotionEntry]):
        self.entries = entries
        self.max_len = max((len(k) for k in entries), default=0)

    @classmethod
    def from_pairs(cls, pairs: list[tuple[str, str, Optional[str]]]) -> "EmotionLexicon":
        """pairs: (term, kind, category-or-None)."""
        entries: dict[tuple[str, ...], EmotionEntry] = {}
        for term, kind, category in pairs:
            if kind == "labeled":
                if category not in CATEGORIES:
                    raise ParseError(
                        f"labeled term {term!r} needs a valid category, got {category!r}"
                    )
            elif kind == "behavioral":
                if category:
                    raise ParseError(f"behavioral term {term!r} must not carry a category")
                category = None
            else:
                raise ParseError(f"term {term!r}: kind must be labeled or behavioral")
            entries[_term_key(term)] = EmotionEntry(kind=kind, category=category)
        return cls(entries)

    @classmethod
    def load_tsv(cls, path) -> "EmotionLexicon":
        """term<TAB>kind<TAB>category(optional). Blank lines and # comments skipped."""
        pairs = []
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) < 2:
                    raise ParseError("expected term<TAB>kind[<TAB>category]", line_no)
                term, kind = parts[0], parts[1]
                category = parts[2] if len(parts) > 2 and parts[2] else None
                pairs.append((term, kind, category))
        return cls.from_pairs(pairs)


class PolarityLexicon:
    def __init__(self, entries: dict[tuple[str, ...], tuple[float, float]]):
        # term key -> (negative weight, positive weight), both >= 0
        self.entries = entries
        self.max_len = max((len(k) for k in entries), default=0)

    @classmethod
    def load_tsv(cls, path) -> "PolarityLexicon":
        """term<TAB>neg<TAB>pos."""
        entries: dict[tuple[str, ...], tuple[float, float]] = {}
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise ParseError("expected term<TAB>neg<TAB>pos", line_no)
                try:
                    neg, pos = float(parts[1]), float(parts[2])
                except ValueError:
                    raise ParseError("weights must be numeric", line_no) from None
                if neg < 0 or pos < 0:
                    raise ParseError("weights must be non-negative", line_no)
                entries[_term_key(parts[0])] = (neg, pos)
        return cls(entries)


def _scan(tokens: list[str], entries: dict, max_len: int) -> list[tuple[tuple[str, ...], object]]:
    """Longest-match-first greedy scan; matches never overlap."""
    matches = []
    i = 0
    n = len(tokens)
    while i < n:
        hit = None
        for length in range(min(max_len, n - i), 0, -1):
            key = tuple(tokens[i : i + length])
            if key in entries:
                hit = (key, entries[key])
                i += length
                break
        if hit is None:
            i += 1
        else:
            matches.append(hit)
    return matches


def lexicon_annotate(sentence: Sentence | str, lex: EmotionLexicon) -> LabelVector:
    """Annotate with the labeled/behavioral modes only: categories come
    from labeled-kind matches; displayed and suggested stay false."""
    text = sentence.text if isinstance(sentence, Sentence) else sentence
    matches = _scan(match_tokens(text), lex.entries, lex.max_len)
    modes: set[str] = set()
    categories: set[str] = set()
    for _, entry in matches:
        modes.add(entry.kind)
        if entry.kind == "labeled" and entry.category:
            categories.add(entry.category)
    return compose_vector(modes, categories)


def polarity_score(sentence: Sentence | str, lex: PolarityLexicon) -> str:
    """Sign of the summed (positive - negative) weights over matched terms."""
    text = sentence.text if isinstance(sentence, Sentence) else sentence
    matches = _scan(match_tokens(text), lex.entries, lex.max_len)
    total = sum(pos - neg for _, (neg, pos) in matches)
    if total > 0:
        return POSITIVE
    if total < 0:
        return NEGATIVE
    return NEUTRAL


# The two projections stated outright are anger->negative and joy->positive;
# the rest of this default is a recorded, overridable choice.
DEFAULT_POLARITY_MAP: dict[str, str] = {
    "joy": POSITIVE,
    "pride": POSITIVE,
    "admiration": POSITIVE,
    "anger": NEGATIVE,
    "disgust": NEGATIVE,
    "fear": NEGATIVE,
    "sadness": NEGATIVE,
    "guilt": NEGATIVE,
    "embarrassment": NEGATIVE,
    "jealousy": NEGATIVE,
    "surprise": NEUTRAL,
    "other": NEUTRAL,
}


def load_polarity_map(path) -> dict[str, str]:
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    out = dict(DEFAULT_POLARITY_MAP)
    for category, polarity in raw.items():
        if category not in CATEGORIES:
            raise ParseError(f"unknown category {category!r} in polarity map")
        if polarity not in POLARITIES:
            raise ParseError(f"unknown polarity {polarity!r} for {category!r}")
        out[category] = polarity
    return out


def project_polarity(v: LabelVector, polarity_map: Optional[dict[str, str]] = None) -> str:
    """Positive if some set category maps positive and none maps negative;
    negative for the reverse; neutral when neither or both."""
    pmap = polarity_map or DEFAULT_POLARITY_MAP
    mapped = {pmap[c] for c in v.categories}
    has_pos = POSITIVE in mapped
    has_neg = NEGATIVE in mapped
    if has_pos and not has_neg:
        return POSITIVE
    if has_neg and not has_pos:
        return NEGATIVE
    return NEUTRAL
