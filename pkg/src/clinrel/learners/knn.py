"""K-nearest-neighbor classification with inverse-square distance weighting.

Neighbor selection includes every instance tied with the k-th distance, so
the prediction does not depend on the storage order of the training set.
When the query coincides with stored instances, only those zero-distance
neighbors vote, by simple majority.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse


@dataclass(frozen=True)
class KnnModel:
    x: sparse.csr_matrix
    labels: tuple[str, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.x.shape[0] != len(self.labels):
            raise ValueError("label count does not match row count")


def knn_train(x: sparse.csr_matrix, labels: Sequence[str], k: int = 2) -> KnnModel:
    if x.shape[0] == 0:
        raise ValueError("empty training set")
    return KnnModel(x, tuple(labels), k)


def _squared_distances(model: KnnModel, queries: sparse.csr_matrix) -> np.ndarray:
    """(n_queries, m) squared Euclidean distances, clipped at zero."""
    train_sq = np.asarray(model.x.multiply(model.x).sum(axis=1)).ravel()
    query_sq = np.asarray(queries.multiply(queries).sum(axis=1)).ravel()
    cross = np.asarray((queries @ model.x.T).todense())
    d2 = query_sq[:, None] + train_sq[None, :] - 2.0 * cross
    np.maximum(d2, 0.0, out=d2)
    return d2


def _label_shares(model: KnnModel, d2_row: np.ndarray) -> tuple[str, dict[str, float]]:
    m = d2_row.shape[0]
    k = min(model.k, m)
    kth = np.partition(d2_row, k - 1)[k - 1]
    neighbor_idx = np.flatnonzero(d2_row <= kth)

    zero_idx = neighbor_idx[d2_row[neighbor_idx] == 0.0]
    votes: dict[str, float] = {}
    if zero_idx.size:
        for i in zero_idx:
            votes[model.labels[i]] = votes.get(model.labels[i], 0.0) + 1.0
    else:
        weights: dict[str, list[float]] = {}
        for i in neighbor_idx:
            weights.setdefault(model.labels[i], []).append(1.0 / d2_row[i])
        # summing each label's weights in sorted order keeps the result
        # independent of training-set permutation
        votes = {label: float(np.sum(np.sort(w))) for label, w in weights.items()}

    total = sum(sorted(votes.values()))
    shares = {label: v / total for label, v in votes.items()}
    # tie-break: highest share, then lexicographically smallest label
    top = max(shares.values())
    winner = min(label for label, s in shares.items() if s == top)
    return winner, shares


def knn_classify(model: KnnModel, queries: sparse.csr_matrix) -> list[str]:
    d2 = _squared_distances(model, queries)
    return [_label_shares(model, d2[i])[0] for i in range(d2.shape[0])]


def knn_score(model: KnnModel, queries: sparse.csr_matrix) -> np.ndarray:
    """Signed vote share of the +1 class for binary +1/-1 problems.

    Positive exactly when the weighted vote favors the positive class.
    """
    d2 = _squared_distances(model, queries)
    out = np.empty(d2.shape[0], dtype=np.float64)
    for i in range(d2.shape[0]):
        _, shares = _label_shares(model, d2[i])
        out[i] = shares.get("+1", 0.0) - shares.get("-1", 0.0)
    return out
