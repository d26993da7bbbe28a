"""One-vs-rest max-margin linear models trained by stochastic subgradient
descent (Pegasos-style: step 1/(l2*t), optional projection onto the ball
that contains the optimum).

Positive examples are weighted by compute_class_weights, so rare labels
still generate margin pressure. Training is sequential per label and
fully deterministic under a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionMismatch
from ..labels import N_LABELS, LabelVector
from .common import TrainConfig, compute_class_weights, to_label_matrix


@dataclass
class LinearModel:
    weights: np.ndarray  # (19, dim)
    bias: np.ndarray  # (19,)

    @property
    def n_features(self) -> int:
        return self.weights.shape[1]

    def predict_margin(self, X) -> np.ndarray:
        X = _as_csr(X)
        if X.shape[1] != self.n_features:
            raise DimensionMismatch(
                f"model expects {self.n_features} features, got {X.shape[1]}"
            )
        return np.asarray(X @ self.weights.T) + self.bias


def _as_csr(X) -> sp.csr_matrix:
    if sp.issparse(X):
        return X.tocsr()
    return sp.csr_matrix(np.asarray(X, dtype=np.float64))


def _row_views(X: sp.csr_matrix):
    """Per-row (indices, values) without repeated slicing overhead."""
    indptr, indices, data = X.indptr, X.indices, X.data
    return [
        (indices[indptr[i] : indptr[i + 1]], data[indptr[i] : indptr[i + 1]])
        for i in range(X.shape[0])
    ]


def _pegasos_binary(
    rows, y: np.ndarray, sample_weight: np.ndarray, dim: int,
    l2: float, epochs: int, rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    """Weighted hinge minimization for one label.

    The weighted objective l2/2*||w||^2 + mean(c*hinge) is optimized by
    sampling examples proportionally to their weight and taking plain
    (unweighted) Pegasos steps against the rescaled regularizer
    l2/mean(c). That keeps the subgradient norm at the feature scale --
    multiplying capped class weights (up to 50) into the update instead
    would blow the step variance up by the squared cap and stall
    convergence at any reasonable step budget.

    Keeps w = scale * v with an incrementally tracked norm, so each step
    costs O(nnz of the sampled row) rather than O(dim). The bias is
    updated un-regularized. Returns the average of the second-half
    iterates (the last iterate of subgradient descent oscillates); the
    average is tracked lazily as scale_sum*v - corr, where corr absorbs
    sparse updates weighted by the scale-sum at the time they happened.
    """
    n = len(rows)
    c_bar = float(sample_weight.mean())
    if c_bar <= 0.0:
        return np.zeros(dim), 0.0  # no training signal at all
    lam = l2 / c_bar
    probs = np.maximum(sample_weight, 1e-12)
    probs = probs / probs.sum()
    v = np.zeros(dim)
    scale = 1.0
    sq_norm = 0.0  # of w = scale * v
    bias = 0.0
    radius = math.sqrt(2.0 / lam)  # loss at w=0 is 1 under the sampling measure
    total_steps = epochs * n
    first_averaged = total_steps // 2 + 1
    scale_sum = 0.0
    corr = np.zeros(dim)
    bias_sum = 0.0
    n_averaged = 0
    t = 0
    for _ in range(epochs):
        for i in rng.choice(n, size=n, p=probs):
            t += 1
            eta = 1.0 / (lam * t)
            idx, val = rows[i]
            margin = y[i] * (scale * float(v[idx] @ val) + bias)
            decay = 1.0 - eta * lam
            if decay <= 0.0:  # only at t == 1: w collapses to 0
                v[:] = 0.0
                scale = 1.0
                sq_norm = 0.0
            else:
                scale *= decay
                sq_norm *= decay * decay
            if margin < 1.0:
                coef = eta * y[i]
                if len(idx):
                    old = v[idx]
                    # ||w + coef*x||^2 with w = scale*v
                    sq_norm += 2.0 * coef * scale * float(old @ val)
                    sq_norm += coef * coef * float(val @ val)
                    delta = (coef / scale) * val
                    v[idx] = old + delta
                    corr[idx] += scale_sum * delta
                bias += coef
            if sq_norm > radius * radius:
                shrink = radius / math.sqrt(sq_norm)
                scale *= shrink
                sq_norm = radius * radius
            if t >= first_averaged:
                scale_sum += scale
                bias_sum += bias
                n_averaged += 1
    w_avg = (scale_sum * v - corr) / n_averaged
    return w_avg, bias_sum / n_averaged


def train_linear_ovr(
    X, Y: Sequence[LabelVector] | np.ndarray, cfg: TrainConfig
) -> LinearModel:
    """Train 19 independent weighted-hinge linear models."""
    X = _as_csr(X)
    Ym = to_label_matrix(Y)
    if X.shape[0] != Ym.shape[0]:
        raise DimensionMismatch(
            f"{X.shape[0]} feature rows vs {Ym.shape[0]} label rows"
        )
    if X.shape[0] == 0:
        raise DimensionMismatch("no training samples")
    pos_weights = compute_class_weights(Ym, cfg.class_weight_cap)
    rows = _row_views(X)
    dim = X.shape[1]
    W = np.zeros((N_LABELS, dim))
    B = np.zeros(N_LABELS)
    for j in range(N_LABELS):
        y = np.where(Ym[:, j], 1.0, -1.0)
        c = np.where(Ym[:, j], pos_weights[j], 1.0)
        rng = np.random.default_rng([cfg.seed, j])
        W[j], B[j] = _pegasos_binary(rows, y, c, dim, cfg.l2, cfg.epochs, rng)
    return LinearModel(weights=W, bias=B)


def hinge_objective(
    model: LinearModel, X, Y: Sequence[LabelVector] | np.ndarray, cfg: TrainConfig
) -> np.ndarray:
    """Per-label regularized weighted hinge: l2/2*||w||^2 + mean(c*hinge)."""
    X = _as_csr(X)
    Ym = to_label_matrix(Y)
    pos_weights = compute_class_weights(Ym, cfg.class_weight_cap)
    margins = model.predict_margin(X)
    out = np.zeros(N_LABELS)
    for j in range(N_LABELS):
        y = np.where(Ym[:, j], 1.0, -1.0)
        c = np.where(Ym[:, j], pos_weights[j], 1.0)
        hinge = np.maximum(0.0, 1.0 - y * margins[:, j])
        out[j] = cfg.l2 / 2.0 * float(model.weights[j] @ model.weights[j]) + float(
            np.mean(c * hinge)
        )
    return out
