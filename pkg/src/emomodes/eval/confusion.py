"""Per-task confusion matrices for multi-label sentences.

Counting scheme (a recorded decision -- multi-label sentences admit
several): every gold-positive label of the task contributes one unit of
row mass, split 1/k over the k predicted-positive task labels of the
same sentence ("none" when nothing was predicted). Sentences with no
gold task label contribute one unit to the "none" row the same way.
Fractional cells are kept exact and only rounded at display time.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..errors import UnknownTask
from ..labels import LABEL_INDEX, TASK_LABELS
from .metrics import _as_matrices

NONE = "none"


@dataclass
class ConfusionMatrix:
    task: str
    labels: list[str]  # task labels + "none", rows == cols
    counts: np.ndarray  # float, fractional mass

    def grand_total(self) -> float:
        return float(self.counts.sum())

    def cell(self, row: str, col: str) -> float:
        return float(self.counts[self.labels.index(row), self.labels.index(col)])

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow([f"task_{self.task}"] + self.labels)
            for i, row in enumerate(self.labels):
                writer.writerow([row] + [f"{v:.3f}" for v in self.counts[i]])

    def to_text(self) -> str:
        width = max(len(l) for l in self.labels) + 2
        head = "".ljust(width) + "".join(l.rjust(width) for l in self.labels)
        lines = [f"Confusion matrix, task {self.task} (rows gold, cols predicted)", head]
        for i, row in enumerate(self.labels):
            lines.append(
                row.ljust(width)
                + "".join(f"{v:.1f}".rjust(width) for v in self.counts[i])
            )
        return "\n".join(lines)


def confusion_matrix(task: str, gold, pred) -> ConfusionMatrix:
    if task not in TASK_LABELS:
        raise UnknownTask(task)
    G, P = _as_matrices(gold, pred)
    labels = list(TASK_LABELS[task])
    cols = [LABEL_INDEX[l] for l in labels]
    names = labels + [NONE]
    k = len(names)
    counts = np.zeros((k, k), dtype=np.float64)

    for g_row, p_row in zip(G[:, cols], P[:, cols]):
        gold_set = np.flatnonzero(g_row)
        pred_set = np.flatnonzero(p_row)
        rows = gold_set if len(gold_set) else np.asarray([len(labels)])
        if len(pred_set):
            mass = 1.0 / len(pred_set)
            for r in rows:
                for c in pred_set:
                    counts[r, c] += mass
        else:
            for r in rows:
                counts[r, len(labels)] += 1.0
    return ConfusionMatrix(task=task, labels=names, counts=counts)
