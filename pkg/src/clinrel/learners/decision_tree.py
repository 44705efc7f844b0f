"""C4.5-style decision tree induction over sparse numeric attributes.

Splits are binary threshold tests at midpoints between observed attribute
values, chosen by gain ratio among attributes whose gain reaches the mean of
the positive gains.  When no split has positive gain but the node is impure,
the first workable split is taken anyway; on consistent data this drives
training error to zero (parity-style targets have zero gain at the root).
Pruning is pessimistic-error pruning with the classic confidence of 0.25.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence, Union

import numpy as np
from scipy import sparse

from .params import TreeParams

_MEAN_GAIN_EPS = 1e-10
_PRUNE_EPS = 0.1


@dataclass(frozen=True)
class Leaf:
    label: str
    n: float
    errors: float


@dataclass(frozen=True)
class Split:
    attribute: int
    threshold: float
    low: "Node"
    high: "Node"
    majority: str
    n: float
    errors: float


Node = Union[Leaf, Split]


@dataclass(frozen=True)
class DecisionTree:
    root: Node
    classes: tuple[str, ...]


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _entropy_cols(counts: np.ndarray) -> np.ndarray:
    """Entropy per column of a (classes x columns) count matrix."""
    totals = counts.sum(axis=0)
    safe = np.where(totals > 0, totals, 1.0)
    p = counts / safe
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > 0, p * np.log2(p), 0.0)
    return -plogp.sum(axis=0)


def _split_stats(low_counts: np.ndarray, high_counts: np.ndarray) -> tuple[float, float]:
    """(gain, split_info) for one binary partition given per-class counts."""
    n_low = low_counts.sum()
    n_high = high_counts.sum()
    n = n_low + n_high
    info = _entropy(low_counts + high_counts)
    after = (n_low / n) * _entropy(low_counts) + (n_high / n) * _entropy(high_counts)
    split_info = 0.0
    for part in (n_low, n_high):
        if part > 0:
            frac = part / n
            split_info -= frac * math.log2(frac)
    return info - after, split_info


@dataclass(frozen=True)
class _Candidate:
    attribute: int
    threshold: float
    gain: float
    split_info: float
    n_low: int
    n_high: int


def _numeric_candidate(
    values: np.ndarray, y: np.ndarray, n_classes: int, attribute: int
) -> _Candidate | None:
    """Best-gain midpoint split of one attribute; ties take the smaller threshold."""
    order = np.argsort(values, kind="stable")
    v = values[order]
    labels = y[order]
    m = v.shape[0]
    onehot = np.zeros((m, n_classes))
    onehot[np.arange(m), labels] = 1.0
    cum = onehot.cumsum(axis=0)
    total = cum[-1]

    best: _Candidate | None = None
    for p in range(1, m):
        if v[p] == v[p - 1]:
            continue
        low = cum[p - 1]
        gain, split_info = _split_stats(low, total - low)
        if best is None or gain > best.gain:
            best = _Candidate(
                attribute,
                (v[p - 1] + v[p]) / 2.0,
                gain,
                split_info,
                int(p),
                int(m - p),
            )
    return best


def c45_gain_ratio(
    x: sparse.csr_matrix, labels: Sequence[str], attribute: int
) -> tuple[float, float, float | None]:
    """(gain, split_info, ratio) of the attribute's best midpoint split.

    A single-valued attribute cannot split: (0, 0, None); the ratio is None
    whenever split_info is zero.
    """
    if x.shape[0] == 0:
        raise ValueError("at least one case required")
    classes = tuple(sorted(set(labels)))
    index = {c: i for i, c in enumerate(classes)}
    y = np.array([index[label] for label in labels], dtype=np.intp)
    values = np.asarray(x[:, attribute].todense()).ravel()
    cand = _numeric_candidate(values, y, len(classes), attribute)
    if cand is None:
        return 0.0, 0.0, None
    ratio = cand.gain / cand.split_info if cand.split_info > 0 else None
    return cand.gain, cand.split_info, ratio


class _Builder:
    def __init__(self, x: sparse.csr_matrix, y: np.ndarray, classes: tuple[str, ...], hp: TreeParams):
        self.x = x
        self.xcsc = x.tocsc()
        self.y = y
        self.classes = classes
        self.hp = hp
        self.n_cols = x.shape[1]
        self.binary_mask = self._binary_columns()
        self.numeric_cols = np.flatnonzero(~self.binary_mask)
        self.row_pos = np.full(x.shape[0], -1, dtype=np.intp)

    def _binary_columns(self) -> np.ndarray:
        mask = np.ones(self.n_cols, dtype=bool)
        offending = np.flatnonzero(self.xcsc.data != 1.0)
        if offending.size:
            cols = np.searchsorted(self.xcsc.indptr, offending, side="right") - 1
            mask[np.unique(cols)] = False
        return mask

    def build(self, rows: np.ndarray) -> Node:
        counts = np.bincount(self.y[rows], minlength=len(self.classes))
        majority = self._majority(counts)
        n = rows.shape[0]
        errors = float(n - counts.max())
        if errors == 0.0 or n < self.hp.min_cases:
            return Leaf(majority, float(n), errors)

        chosen = self._choose_split(rows, counts)
        if chosen is None:
            return Leaf(majority, float(n), errors)
        attribute, threshold = chosen
        values = self._column_values(rows, attribute)
        low_rows = rows[values <= threshold]
        high_rows = rows[values > threshold]
        return Split(
            attribute,
            threshold,
            self.build(low_rows),
            self.build(high_rows),
            majority,
            float(n),
            errors,
        )

    def _majority(self, counts: np.ndarray) -> str:
        # argmax of counts; bincount order == sorted class order, so the
        # first maximum is the lexicographically smallest label
        return self.classes[int(counts.argmax())]

    def _column_values(self, rows: np.ndarray, attribute: int) -> np.ndarray:
        self.row_pos[rows] = np.arange(rows.shape[0])
        start, end = self.xcsc.indptr[attribute], self.xcsc.indptr[attribute + 1]
        col_rows = self.xcsc.indices[start:end]
        col_vals = self.xcsc.data[start:end]
        values = np.zeros(rows.shape[0])
        pos = self.row_pos[col_rows]
        inside = pos >= 0
        values[pos[inside]] = col_vals[inside]
        self.row_pos[rows] = -1
        return values

    def _choose_split(self, rows: np.ndarray, counts: np.ndarray) -> tuple[int, float] | None:
        candidates = self._binary_candidates(rows, counts)
        y_rows = self.y[rows]
        for attribute in self.numeric_cols:
            values = self._column_values(rows, attribute)
            cand = _numeric_candidate(values, y_rows, len(self.classes), int(attribute))
            if cand is not None:
                candidates.append(cand)
        valid = [
            c
            for c in candidates
            if c.n_low >= self.hp.min_cases and c.n_high >= self.hp.min_cases
        ]
        if not valid:
            return None
        valid.sort(key=lambda c: (c.attribute, c.threshold))
        positive = [c for c in valid if c.gain > 0.0]
        if positive:
            mean_gain = sum(c.gain for c in positive) / len(positive)
            admissible = [c for c in positive if c.gain >= mean_gain - _MEAN_GAIN_EPS]
            best = admissible[0]
            for c in admissible[1:]:
                ratio = c.gain / c.split_info
                best_ratio = best.gain / best.split_info
                if ratio > best_ratio:
                    best = c
            return best.attribute, best.threshold
        # impure node, no informative split: fall back to the first workable
        # one so consistent data still separates
        first = valid[0]
        return first.attribute, first.threshold

    def _binary_candidates(self, rows: np.ndarray, counts: np.ndarray) -> list[_Candidate]:
        sub = self.x[rows]
        repeated = np.repeat(self.y[rows], np.diff(sub.indptr))
        n_classes = len(self.classes)
        present = np.zeros((n_classes, self.n_cols))
        for c in range(n_classes):
            cols = sub.indices[repeated == c]
            if cols.size:
                present[c] = np.bincount(cols, minlength=self.n_cols)
        low = counts[:, None] - present
        n_high = present.sum(axis=0)
        n_low = rows.shape[0] - n_high

        info = _entropy(counts)
        m = float(rows.shape[0])
        after = (n_low / m) * _entropy_cols(low) + (n_high / m) * _entropy_cols(present)
        gains = info - after
        frac_low = n_low / m
        frac_high = n_high / m
        split_info = -(
            frac_low * np.log2(np.where(frac_low > 0, frac_low, 1.0))
            + frac_high * np.log2(np.where(frac_high > 0, frac_high, 1.0))
        )
        usable = self.binary_mask & (n_high > 0) & (n_low > 0)
        return [
            _Candidate(int(j), 0.5, float(gains[j]), float(split_info[j]), int(n_low[j]), int(n_high[j]))
            for j in np.flatnonzero(usable)
        ]


def c45_build(x: sparse.csr_matrix, labels: Sequence[str], hp: TreeParams = TreeParams()) -> DecisionTree:
    """Grow (and by default prune) a tree from sparse training data."""
    m = x.shape[0]
    if m == 0:
        raise ValueError("empty training set")
    if m != len(labels):
        raise ValueError("label count does not match row count")
    classes = tuple(sorted(set(labels)))
    index = {c: i for i, c in enumerate(classes)}
    y = np.array([index[label] for label in labels], dtype=np.intp)
    builder = _Builder(x, y, classes, hp)
    root = builder.build(np.arange(m, dtype=np.intp))
    if hp.prune:
        root = _prune(root, hp.confidence)
    return DecisionTree(root, classes)


def add_errs(n: float, e: float, cf: float) -> float:
    """Pessimistic additional-error estimate for a leaf with n cases, e errors."""
    if n <= 0:
        return 0.0
    if e == 0:
        return n * (1.0 - cf ** (1.0 / n))
    if e < 1:
        base = add_errs(n, 0.0, cf)
        return base + e * (add_errs(n, 1.0, cf) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = NormalDist().inv_cdf(1.0 - cf)
    f = (e + 0.5) / n
    r = (f + z * z / (2 * n) + z * math.sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (
        1 + z * z / n
    )
    return r * n - e


def _estimated_errors(node: Node, cf: float) -> float:
    if isinstance(node, Leaf):
        return node.errors + add_errs(node.n, node.errors, cf)
    return _estimated_errors(node.low, cf) + _estimated_errors(node.high, cf)


def _prune(node: Node, cf: float) -> Node:
    if isinstance(node, Leaf):
        return node
    low = _prune(node.low, cf)
    high = _prune(node.high, cf)
    subtree = _estimated_errors(low, cf) + _estimated_errors(high, cf)
    as_leaf = node.errors + add_errs(node.n, node.errors, cf)
    if as_leaf <= subtree + _PRUNE_EPS:
        return Leaf(node.majority, node.n, node.errors)
    return Split(node.attribute, node.threshold, low, high, node.majority, node.n, node.errors)


def _descend(node: Node, features: dict[int, float]) -> Leaf:
    while isinstance(node, Split):
        node = node.low if features.get(node.attribute, 0.0) <= node.threshold else node.high
    return node


def _row_features(x: sparse.csr_matrix, i: int) -> dict[int, float]:
    start, end = x.indptr[i], x.indptr[i + 1]
    return dict(zip(x.indices[start:end].tolist(), x.data[start:end].tolist()))


def c45_classify(tree: DecisionTree, x: sparse.csr_matrix) -> list[str]:
    return [_descend(tree.root, _row_features(x, i)).label for i in range(x.shape[0])]


def c45_score(tree: DecisionTree, x: sparse.csr_matrix) -> np.ndarray:
    """Signed Laplace confidence of the reached leaf for binary +1/-1 trees."""
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        leaf = _descend(tree.root, _row_features(x, i))
        confidence = (leaf.n - leaf.errors + 1.0) / (leaf.n + 2.0)
        out[i] = confidence if leaf.label == "+1" else -confidence
    return out
