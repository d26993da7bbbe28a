"""Mode x category interaction tables.

Three directions: how often each mode cooccurs with each category in the
gold annotations (column-normalized by the category's sentence count),
and how well each mode/category is predicted when the other is present
(conditional F1). Cells with no support are undefined (NaN), never zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptySubset
from ..labels import CATEGORIES, LABEL_INDEX, MODES
from .metrics import _as_matrices, _to_matrix, conditional_metrics

COOCCURRENCE = "cooccurrence"
MODE_GIVEN_CATEGORY = "mode_given_category"
CATEGORY_GIVEN_MODE = "category_given_mode"


@dataclass
class CrossTable:
    direction: str
    values: np.ndarray  # (4 modes, 12 categories); NaN marks undefined cells

    def cell(self, mode: str, category: str) -> float:
        return float(self.values[MODES.index(mode), CATEGORIES.index(category)])

    def to_text(self) -> str:
        width = max(len(c) for c in CATEGORIES) + 2
        head = "".ljust(12) + "".join(c.rjust(width) for c in CATEGORIES)
        lines = [f"Cross table ({self.direction})", head]
        for i, mode in enumerate(MODES):
            cells = []
            for v in self.values[i]:
                cells.append(("--" if np.isnan(v) else f"{v:.2f}").rjust(width))
            lines.append(mode.ljust(12) + "".join(cells))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "modes": list(MODES),
            "categories": list(CATEGORIES),
            "values": [
                [None if np.isnan(v) else float(v) for v in row]
                for row in self.values
            ],
        }


def cooccurrence(gold) -> CrossTable:
    """cell(m, c) = |sentences with both m and c| / |sentences with c|."""
    G = _to_matrix(gold)
    values = np.full((len(MODES), len(CATEGORIES)), np.nan)
    for ci, cat in enumerate(CATEGORIES):
        with_cat = G[:, LABEL_INDEX[cat]]
        denom = int(np.sum(with_cat))
        if denom == 0:
            continue  # column stays undefined
        for mi, mode in enumerate(MODES):
            both = int(np.sum(with_cat & G[:, LABEL_INDEX[mode]]))
            values[mi, ci] = both / denom
    return CrossTable(direction=COOCCURRENCE, values=values)


def mode_f1_by_category(gold, pred) -> CrossTable:
    """F1 of each mode over the sentences whose gold carries each category."""
    G, P = _as_matrices(gold, pred)
    values = np.full((len(MODES), len(CATEGORIES)), np.nan)
    for ci, cat in enumerate(CATEGORIES):
        try:
            report = conditional_metrics(G, P, cat, "B")
        except EmptySubset:
            continue
        for mi, mode in enumerate(MODES):
            if report.per_label[mode].support > 0:
                values[mi, ci] = report.per_label[mode].f1
    return CrossTable(direction=MODE_GIVEN_CATEGORY, values=values)


def category_f1_by_mode(gold, pred) -> CrossTable:
    """F1 of each category over the sentences whose gold carries each mode."""
    G, P = _as_matrices(gold, pred)
    values = np.full((len(MODES), len(CATEGORIES)), np.nan)
    for mi, mode in enumerate(MODES):
        try:
            report = conditional_metrics(G, P, mode, "D")
        except EmptySubset:
            continue
        for ci, cat in enumerate(CATEGORIES):
            if report.per_label[cat].support > 0:
                values[mi, ci] = report.per_label[cat].f1
    return CrossTable(direction=CATEGORY_GIVEN_MODE, values=values)
