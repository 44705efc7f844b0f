"""Perceptron training with uneven margins.

Online additive updates with per-class margin requirements: an example
triggers an update whenever its functional margin fails to exceed the
threshold of its class (tau_pos for +1, tau_neg for -1).  The bias moves in
steps of R squared, with R the largest training-vector norm.  Training stops
after the first full pass without updates, or at the epoch cap with the
model flagged non-separated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .params import PaumParams


@dataclass(frozen=True)
class PaumModel:
    weights: np.ndarray
    bias: float
    bias_feature: float
    opt_b: float
    converged: bool
    epochs: int


def paum_train(x: sparse.csr_matrix, y: np.ndarray, hp: PaumParams = PaumParams()) -> PaumModel:
    """Fig-style margin perceptron; examples are visited in input order."""
    m, n = x.shape
    if m == 0:
        raise ValueError("empty training set")
    y = np.asarray(y, dtype=np.float64)
    if y.shape[0] != m or not np.all(np.abs(y) == 1.0):
        raise ValueError("labels must be +1/-1, one per row")

    row_norms_sq = np.asarray(x.multiply(x).sum(axis=1)).ravel()
    r_sq = float(row_norms_sq.max()) if m else 0.0

    w = np.zeros(n, dtype=np.float64)
    b = 0.0
    # optional always-on bias feature, scaled by opt_b (0 disables it)
    w_aug = 0.0
    taus = {1.0: hp.tau_pos, -1.0: hp.tau_neg}

    indptr, indices, data = x.indptr, x.indices, x.data
    rows = [(indices[indptr[i]: indptr[i + 1]], data[indptr[i]: indptr[i + 1]]) for i in range(m)]

    converged = False
    epochs = 0
    for _ in range(hp.max_epochs):
        epochs += 1
        updated = False
        for i in range(m):
            idx, vals = rows[i]
            score = float(vals @ w[idx]) + w_aug * hp.opt_b + b
            if y[i] * score <= taus[y[i]]:
                step = hp.eta * y[i]
                w[idx] += step * vals
                w_aug += step * hp.opt_b
                b += step * r_sq
                updated = True
        if not updated:
            converged = True
            break
    return PaumModel(w, b, w_aug, hp.opt_b, converged, epochs)


def paum_decision(model: PaumModel, x: sparse.csr_matrix) -> np.ndarray:
    """Raw decision values w.x + b (plus the bias-feature term when enabled)."""
    scores = np.asarray(x @ model.weights).ravel() + model.bias
    if model.opt_b:
        scores = scores + model.bias_feature * model.opt_b
    return scores
