"""One-vs-all reduction from multi-class labels to binary scorers.

One binary problem per target class (that class against everything else,
including the null label).  Prediction takes the best-scoring class among
those with a positive score, falling back to the null label when no score is
positive.  Ties go to the lexicographically smallest class.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .decision_tree import c45_build, c45_score
from .knn import knn_score, knn_train
from .naive_bayes import nb_scores, nb_train
from .params import KnnParams, NbParams, Params, PaumParams, SvmParams, TreeParams, params_for
from .paum import paum_decision, paum_train
from .svm import KernelCache, apply_uneven_margin, smo_train, svm_decision

log = logging.getLogger(__name__)

ALGORITHMS = ("nb", "c45", "knn", "paum", "svm")

NULL_LABEL = "null"


@dataclass(frozen=True)
class _Constant:
    """Degenerate binary scorer for one-sided problems."""

    score: float


@dataclass(frozen=True)
class OvaModel:
    algorithm: str
    classes: tuple[str, ...]
    models: tuple[object, ...]
    params: Params
    n_features: int
    null_label: str = NULL_LABEL


def _fit_binary(algorithm: str, x, y: np.ndarray, params: Params, cache: KernelCache | None):
    if np.all(y == y[0]):
        return _Constant(float(y[0]))
    if algorithm == "nb":
        return nb_train(x, ["+1" if v > 0 else "-1" for v in y])
    if algorithm == "c45":
        return c45_build(x, ["+1" if v > 0 else "-1" for v in y], params)
    if algorithm == "knn":
        return knn_train(x, ["+1" if v > 0 else "-1" for v in y], params.k)
    if algorithm == "paum":
        return paum_train(x, y, params)
    if algorithm == "svm":
        solution = smo_train(x, y, params.c, params.kernel, params.tol, cache)
        return apply_uneven_margin(solution, params.tau)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _score_binary(algorithm: str, model, x) -> np.ndarray:
    if isinstance(model, _Constant):
        return np.full(x.shape[0], model.score)
    if algorithm == "nb":
        scores = nb_scores(model, x)
        pos = model.classes.index("+1")
        neg = model.classes.index("-1")
        return scores[:, pos] - scores[:, neg]
    if algorithm == "c45":
        return c45_score(model, x)
    if algorithm == "knn":
        return knn_score(model, x)
    if algorithm == "paum":
        return paum_decision(model, x)
    if algorithm == "svm":
        return svm_decision(model, x)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def ova_train(
    x: sparse.csr_matrix,
    labels: Sequence[str],
    algorithm: str,
    params: Params | None = None,
    classes: Sequence[str] | None = None,
    null_label: str = NULL_LABEL,
) -> OvaModel:
    """Train one binary model per non-null class.

    A class with no positive instances gets a constant-negative scorer so the
    model shape is stable across folds.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if params is None:
        params = params_for(algorithm)
    labels = list(labels)
    if classes is None:
        classes = sorted(set(labels) - {null_label})
    classes = tuple(classes)

    cache = None
    if algorithm == "svm" and x.shape[0] > 0:
        cache = KernelCache(x, params.kernel, params.cache_mb)

    label_arr = np.array(labels)
    models = []
    for cls in classes:
        y = np.where(label_arr == cls, 1.0, -1.0)
        if not np.any(y > 0):
            log.warning("class %s has no positive training instances; using a constant-negative model", cls)
            models.append(_Constant(-1.0))
            continue
        models.append(_fit_binary(algorithm, x, y, params, cache))
    return OvaModel(algorithm, classes, tuple(models), params, x.shape[1], null_label)


def ova_scores(model: OvaModel, x: sparse.csr_matrix) -> np.ndarray:
    """(instances x classes) decision-score matrix."""
    if x.shape[1] != model.n_features:
        raise ValueError("feature width does not match the model")
    if not model.classes:
        return np.zeros((x.shape[0], 0))
    return np.column_stack(
        [_score_binary(model.algorithm, m, x) for m in model.models]
    )


def ova_classify(model: OvaModel, x: sparse.csr_matrix) -> list[str]:
    scores = ova_scores(model, x)
    out = []
    for i in range(scores.shape[0]):
        if scores.shape[1] == 0:
            out.append(model.null_label)
            continue
        best = int(scores[i].argmax())
        if scores[i, best] > 0.0:
            out.append(model.classes[best])
        else:
            out.append(model.null_label)
    return out
