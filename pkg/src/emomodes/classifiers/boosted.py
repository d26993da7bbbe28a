"""One-vs-rest gradient-boosted regression trees with logistic loss.

Each round fits a depth-limited tree to the current gradients/hessians
and takes a Newton step per leaf (value = -G/(H + reg)), scaled by the
shrinkage. Splits are exact greedy over sparse columns: candidate
thresholds are midpoints between distinct observed values, with the
implicit zeros of a sparse column aggregated as one value group.
Everything is deterministic: stable sorts, first-best tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionMismatch
from ..labels import N_LABELS, LabelVector
from .common import TrainConfig, sigmoid, to_label_matrix

_REG_LAMBDA = 1.0  # leaf L2 regularization
_MIN_GAIN = 1e-12
_MIN_HESSIAN = 1e-12
_PROB_CLIP = 1e-6
_MAX_LEAF = 10.0  # Newton step cap; keeps near-converged rounds stable


@dataclass
class Tree:
    """Array-encoded binary tree; feature == -1 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def depth(self) -> int:
        def walk(node: int) -> int:
            if self.feature[node] < 0:
                return 0
            return 1 + max(walk(self.left[node]), walk(self.right[node]))

        return walk(0)


class _TreeBuilder:
    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def add(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def build(self) -> Tree:
        return Tree(
            feature=np.asarray(self.feature, dtype=np.int32),
            threshold=np.asarray(self.threshold, dtype=np.float64),
            left=np.asarray(self.left, dtype=np.int32),
            right=np.asarray(self.right, dtype=np.int32),
            value=np.asarray(self.value, dtype=np.float64),
        )


def _leaf_value(G: float, H: float) -> float:
    return float(np.clip(-G / (H + _REG_LAMBDA), -_MAX_LEAF, _MAX_LEAF))


def _column(Xcsc: sp.csc_matrix, f: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = Xcsc.indptr[f], Xcsc.indptr[f + 1]
    return Xcsc.indices[a:b], Xcsc.data[a:b]


def _best_split(Xcsc, samples, in_node, g, h, G, H):
    """Exact greedy over all features. Returns (gain, feature, threshold)."""
    n_node = len(samples)
    parent = G * G / (H + _REG_LAMBDA)
    best = (0.0, -1, 0.0)
    for f in range(Xcsc.shape[1]):
        rows, vals = _column(Xcsc, f)
        if len(rows) == 0:
            continue
        sel = in_node[rows]
        r, v = rows[sel], vals[sel]
        n_zero = n_node - len(r)
        if len(r) == 0 or (n_zero == 0 and np.all(v == v[0])):
            continue
        # Distinct-value groups in ascending value order, zeros as one group.
        order = np.argsort(v, kind="stable")
        sv, sg, sh = v[order], g[r][order], h[r][order]
        values: list[float] = []
        Gs: list[float] = []
        Hs: list[float] = []
        i = 0
        zero_done = n_zero == 0
        while i < len(sv):
            j = i
            while j < len(sv) and sv[j] == sv[i]:
                j += 1
            if not zero_done and sv[i] > 0.0:
                values.append(0.0)
                Gs.append(G - float(np.sum(sg)))
                Hs.append(H - float(np.sum(sh)))
                zero_done = True
            values.append(float(sv[i]))
            Gs.append(float(np.sum(sg[i:j])))
            Hs.append(float(np.sum(sh[i:j])))
            i = j
        if not zero_done:
            values.append(0.0)
            Gs.append(G - float(np.sum(sg)))
            Hs.append(H - float(np.sum(sh)))
        if len(values) < 2:
            continue
        GL = HL = 0.0
        for k in range(len(values) - 1):
            GL += Gs[k]
            HL += Hs[k]
            GR, HR = G - GL, H - HL
            if HL < _MIN_HESSIAN or HR < _MIN_HESSIAN:
                continue
            gain = 0.5 * (
                GL * GL / (HL + _REG_LAMBDA) + GR * GR / (HR + _REG_LAMBDA) - parent
            )
            if gain > best[0] + _MIN_GAIN:
                thr = (values[k] + values[k + 1]) / 2.0
                best = (gain, f, thr)
    return best


def _grow_tree(Xcsc, g, h, samples, max_depth):
    """Build one tree; returns (Tree, leaf node id per training sample)."""
    n = Xcsc.shape[0]
    builder = _TreeBuilder()
    leaf_of = np.zeros(n, dtype=np.int64)
    root = builder.add()
    stack = [(root, samples, 0)]
    while stack:
        node, S, depth = stack.pop()
        G = float(np.sum(g[S]))
        H = float(np.sum(h[S]))
        if depth >= max_depth or len(S) < 2 or H < _MIN_HESSIAN:
            builder.value[node] = _leaf_value(G, H)
            leaf_of[S] = node
            continue
        in_node = np.zeros(n, dtype=bool)
        in_node[S] = True
        gain, f, thr = _best_split(Xcsc, S, in_node, g, h, G, H)
        if f < 0:
            builder.value[node] = _leaf_value(G, H)
            leaf_of[S] = node
            continue
        rows, vals = _column(Xcsc, f)
        sel = in_node[rows]
        col = np.zeros(n)
        col[rows[sel]] = vals[sel]
        goes_left = col[S] < thr
        S_left, S_right = S[goes_left], S[~goes_left]
        builder.feature[node] = f
        builder.threshold[node] = thr
        left = builder.add()
        right = builder.add()
        builder.left[node] = left
        builder.right[node] = right
        stack.append((right, S_right, depth + 1))
        stack.append((left, S_left, depth + 1))
    return builder.build(), leaf_of


def _route(tree: Tree, Xcsc: sp.csc_matrix) -> np.ndarray:
    """Leaf value for every row of X."""
    n = Xcsc.shape[0]
    out = np.zeros(n)
    stack = [(0, np.arange(n, dtype=np.int64))]
    while stack:
        node, S = stack.pop()
        if len(S) == 0:
            continue
        f = tree.feature[node]
        if f < 0:
            out[S] = tree.value[node]
            continue
        rows, vals = _column(Xcsc, f)
        col = np.zeros(n)
        col[rows] = vals
        goes_left = col[S] < tree.threshold[node]
        stack.append((tree.left[node], S[goes_left]))
        stack.append((tree.right[node], S[~goes_left]))
    return out


@dataclass
class TreeEnsemble:
    trees: list[list[Tree]]  # one list per label
    base: np.ndarray  # (19,) prior log-odds
    shrinkage: float
    n_features: int
    loss_trace: list[list[float]] = field(default_factory=list)

    def predict_margin(self, X) -> np.ndarray:
        X = _as_csr(X)
        if X.shape[1] != self.n_features:
            raise DimensionMismatch(
                f"model expects {self.n_features} features, got {X.shape[1]}"
            )
        Xcsc = X.tocsc()
        Xcsc.eliminate_zeros()
        margins = np.tile(self.base, (X.shape[0], 1))
        for j in range(N_LABELS):
            for tree in self.trees[j]:
                margins[:, j] += self.shrinkage * _route(tree, Xcsc)
        return margins


def _as_csr(X) -> sp.csr_matrix:
    if sp.issparse(X):
        return X.tocsr()
    return sp.csr_matrix(np.asarray(X, dtype=np.float64))


def _log_loss(y: np.ndarray, margins: np.ndarray) -> float:
    p = np.clip(sigmoid(margins), _PROB_CLIP, 1.0 - _PROB_CLIP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def train_boosted_ovr(
    X, Y: Sequence[LabelVector] | np.ndarray, cfg: TrainConfig
) -> TreeEnsemble:
    """Per-label boosted trees; records the training-loss trace per label
    (rounds + 1 points, starting at the constant prior)."""
    X = _as_csr(X)
    Ym = to_label_matrix(Y)
    if X.shape[0] != Ym.shape[0]:
        raise DimensionMismatch(
            f"{X.shape[0]} feature rows vs {Ym.shape[0]} label rows"
        )
    if X.shape[0] == 0:
        raise DimensionMismatch("no training samples")
    Xcsc = X.tocsc()
    Xcsc.eliminate_zeros()  # stored zeros would double-count the zero group
    n = X.shape[0]
    all_samples = np.arange(n, dtype=np.int64)

    base = np.zeros(N_LABELS)
    trees: list[list[Tree]] = []
    traces: list[list[float]] = []
    for j in range(N_LABELS):
        y = Ym[:, j].astype(np.float64)
        p0 = float(np.clip(y.mean(), _PROB_CLIP, 1.0 - _PROB_CLIP))
        base[j] = float(np.log(p0 / (1.0 - p0)))
        margins = np.full(n, base[j])
        label_trees: list[Tree] = []
        trace = [_log_loss(y, margins)]
        for _ in range(cfg.rounds):
            p = sigmoid(margins)
            g = p - y
            h = np.maximum(p * (1.0 - p), _PROB_CLIP)
            tree, leaf_of = _grow_tree(Xcsc, g, h, all_samples, cfg.max_depth)
            margins = margins + cfg.learning_rate * tree.value[leaf_of]
            label_trees.append(tree)
            trace.append(_log_loss(y, margins))
        trees.append(label_trees)
        traces.append(trace)
    return TreeEnsemble(
        trees=trees,
        base=base,
        shrinkage=cfg.learning_rate,
        n_features=X.shape[1],
        loss_trace=traces,
    )
