"""Per-label precision/recall/F1, Cohen's Kappa, conditional and agreement
metrics.

Conventions, fixed here once: precision is 0 (not undefined) when nothing
was predicted positive; recall is 0 when there are no gold positives;
F1 is 0 when P + R = 0. Macro scores average over each task's labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..errors import (
    EmptySubset,
    LengthMismatch,
    MisalignedSets,
    UnknownLabel,
    UnknownTask,
)
from ..labels import (
    CANONICAL_ORDER,
    LABEL_INDEX,
    N_LABELS,
    TASK_LABELS,
    LabelVector,
)


@dataclass(frozen=True)
class LabelMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class TaskMetrics:
    precision: float
    recall: float
    f1: float


@dataclass
class MetricsReport:
    per_label: dict[str, LabelMetrics]
    macro: dict[str, TaskMetrics]
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "per_label": {
                name: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for name, m in self.per_label.items()
            },
            "macro": {
                task: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
                for task, m in self.macro.items()
            },
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{'label':<16}{'P':>8}{'R':>8}{'F1':>8}{'support':>9}"]
        for name, m in self.per_label.items():
            lines.append(
                f"{name:<16}{m.precision:>8.3f}{m.recall:>8.3f}{m.f1:>8.3f}{m.support:>9d}"
            )
        for task, m in self.macro.items():
            lines.append(
                f"{'macro ' + task:<16}{m.precision:>8.3f}{m.recall:>8.3f}{m.f1:>8.3f}{'':>9}"
            )
        return "\n".join(lines)


def _prf(tp: float, fp: float, fn: float) -> tuple[float, float, float]:
    p = tp / (tp + fp) if tp + fp > 0 else 0.0
    r = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f1


def align_sets(
    gold: Mapping[str, LabelVector], pred: Mapping[str, LabelVector]
) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Align two sent_id-keyed annotation maps; raises MisalignedSets."""
    if set(gold) != set(pred):
        missing = sorted(set(gold) ^ set(pred))[:5]
        raise MisalignedSets(f"sentence sets differ (e.g. {missing})")
    ids = sorted(gold)
    G = np.asarray([gold[i].as_ints() for i in ids], dtype=bool)
    P = np.asarray([pred[i].as_ints() for i in ids], dtype=bool)
    return ids, G, P


def _as_matrices(gold, pred) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(gold, Mapping) or isinstance(pred, Mapping):
        if not (isinstance(gold, Mapping) and isinstance(pred, Mapping)):
            raise MisalignedSets("gold and pred must both be maps or both sequences")
        _, G, P = align_sets(gold, pred)
        return G, P
    G = _to_matrix(gold)
    P = _to_matrix(pred)
    if G.shape != P.shape:
        raise MisalignedSets(f"shape mismatch: {G.shape} vs {P.shape}")
    return G, P


def _to_matrix(rows) -> np.ndarray:
    if isinstance(rows, Mapping):
        rows = [rows[k] for k in sorted(rows)]
    if isinstance(rows, np.ndarray):
        out = rows.astype(bool)
    else:
        out = np.asarray([list(r) for r in rows], dtype=bool)
    if out.ndim != 2 or out.shape[1] != N_LABELS:
        raise MisalignedSets(f"expected (n, {N_LABELS}) labels, got {out.shape}")
    return out


def prf1(gold, pred, metadata: dict | None = None) -> MetricsReport:
    """Binary P/R/F1 per label plus per-task macro averages.

    ``gold``/``pred`` are aligned sequences of LabelVector (or boolean
    matrices), or two maps keyed by sent_id.
    """
    G, P = _as_matrices(gold, pred)
    per_label: dict[str, LabelMetrics] = {}
    for name in CANONICAL_ORDER:
        j = LABEL_INDEX[name]
        g, p = G[:, j], P[:, j]
        tp = float(np.sum(g & p))
        fp = float(np.sum(~g & p))
        fn = float(np.sum(g & ~p))
        prec, rec, f1 = _prf(tp, fp, fn)
        per_label[name] = LabelMetrics(prec, rec, f1, support=int(np.sum(g)))
    macro = {
        task: TaskMetrics(
            precision=float(np.mean([per_label[l].precision for l in labels])),
            recall=float(np.mean([per_label[l].recall for l in labels])),
            f1=float(np.mean([per_label[l].f1 for l in labels])),
        )
        for task, labels in TASK_LABELS.items()
    }
    return MetricsReport(per_label=per_label, macro=macro, metadata=metadata or {})


def cohen_kappa(a: Sequence[object], b: Sequence[object]) -> float:
    """Chance-corrected agreement between two binary judgment sequences.

    Returns 1.0 in the degenerate all-agree case where expected agreement
    is also 1. (Expected agreement of 1 with disagreement present cannot
    happen for equal-length binary sequences: both marginals would have
    to be degenerate on the same value, forcing agreement.)
    """
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} judgments")
    if len(a) == 0:
        raise LengthMismatch("empty judgment sequences")
    x = np.asarray([bool(v) for v in a])
    y = np.asarray([bool(v) for v in b])
    n = len(x)
    p_o = float(np.mean(x == y))
    p_yes = float(np.mean(x)) * float(np.mean(y))
    p_no = (1.0 - float(np.mean(x))) * (1.0 - float(np.mean(y)))
    p_e = p_yes + p_no
    if p_e >= 1.0:
        return 1.0 if p_o == 1.0 else float("nan")  # nan branch unreachable, see above
    return (p_o - p_e) / (1.0 - p_e)


def conditional_metrics(
    gold, pred, condition_label: str, target_task: str, metadata: dict | None = None
) -> MetricsReport:
    """prf1 restricted to sentences whose gold sets ``condition_label``,
    reported over ``target_task``'s labels only."""
    if condition_label not in LABEL_INDEX:
        raise UnknownLabel(condition_label)
    if target_task not in TASK_LABELS:
        raise UnknownTask(target_task)
    G, P = _as_matrices(gold, pred)
    mask = G[:, LABEL_INDEX[condition_label]]
    if not np.any(mask):
        raise EmptySubset(f"no sentence has gold {condition_label!r}")
    full = prf1(G[mask], P[mask], metadata=metadata)
    labels = TASK_LABELS[target_task]
    return MetricsReport(
        per_label={l: full.per_label[l] for l in labels},
        macro={target_task: full.macro[target_task]},
        metadata={
            **(metadata or {}),
            "condition": condition_label,
            "task": target_task,
            "n_sentences": int(np.sum(mask)),
        },
    )


def expert_agreement_rate(
    judgments: Sequence[tuple[str, bool]]
) -> dict[str, dict[str, float]]:
    """Percentage of agreeing judgments per label source.

    ``judgments``: rows of (source, agree) where source says whether the
    judged label came from the human reference, the model, or both.
    """
    if not judgments:
        raise ValueError("no judgments")
    totals: dict[str, int] = {}
    agrees: dict[str, int] = {}
    for source, agree in judgments:
        totals[source] = totals.get(source, 0) + 1
        agrees[source] = agrees.get(source, 0) + int(bool(agree))
    return {
        source: {
            "agreement_pct": 100.0 * agrees[source] / totals[source],
            "n": totals[source],
        }
        for source in totals
    }


def polarity_metrics(
    gold_polarity: Sequence[str], pred_polarity: Sequence[str],
    metadata: dict | None = None,
) -> MetricsReport:
    """P/R/F1 for the positive and negative classes; neutral counts as a
    positive of neither class."""
    if len(gold_polarity) != len(pred_polarity):
        raise MisalignedSets(f"{len(gold_polarity)} vs {len(pred_polarity)} sentences")
    per_label: dict[str, LabelMetrics] = {}
    for cls in ("positive", "negative"):
        tp = sum(1 for g, p in zip(gold_polarity, pred_polarity) if g == cls and p == cls)
        fp = sum(1 for g, p in zip(gold_polarity, pred_polarity) if g != cls and p == cls)
        fn = sum(1 for g, p in zip(gold_polarity, pred_polarity) if g == cls and p != cls)
        prec, rec, f1 = _prf(tp, fp, fn)
        support = sum(1 for g in gold_polarity if g == cls)
        per_label[cls] = LabelMetrics(prec, rec, f1, support)
    macro = {
        "polarity": TaskMetrics(
            precision=float(np.mean([per_label[c].precision for c in ("positive", "negative")])),
            recall=float(np.mean([per_label[c].recall for c in ("positive", "negative")])),
            f1=float(np.mean([per_label[c].f1 for c in ("positive", "negative")])),
        )
    }
    return MetricsReport(per_label=per_label, macro=macro, metadata=metadata or {})
