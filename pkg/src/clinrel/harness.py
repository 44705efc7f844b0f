"""Cross-validation, response/key matching, and P/R/F1 aggregation.

Folds split by document: documents are shuffled with a seeded generator and
dealt round-robin, so a (corpus, k, seed) triple always yields the same plan.
Scoring is exact-match on (type, arg1, arg2) within a document.  Per-type
results are macro-averaged over the folds in which the type occurs (in gold
or in the response); the overall row micro-aggregates counts over types
within each fold and macro-averages those values over all folds.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy import sparse

from .corpus import Corpus, Document, RelationInstance
from .features import FeatureConfig, FeatureVector, build_index, extract, vectorize
from .learners import ova_classify, ova_train, params_for
from .learners.params import Params
from .pairing import DEFAULT_MAX_CROSSINGS, LabeledInstance, labeled_instances
from .schema import RELATION_TYPES, RelationType

DEFAULT_FOLDS = 10
DEFAULT_SEED = 42


@dataclass(frozen=True)
class Metrics:
    p: float
    r: float
    f1: float


def prf(tp: int, fp: int, fn: int) -> Metrics:
    """Precision/recall/F1 with explicit zero conventions for empty denominators."""
    p = tp / (tp + fp) if tp + fp > 0 else 0.0
    r = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return Metrics(p, r, f1)


def macro_average(per_fold: Sequence[Metrics]) -> Metrics | None:
    """Independent arithmetic means of P, R, and F1; None when nothing contributes.

    Averaging F1 values directly means the reported F1 is generally not the
    harmonic mean of the reported P and R.
    """
    if not per_fold:
        return None
    n = len(per_fold)
    return Metrics(
        sum(m.p for m in per_fold) / n,
        sum(m.r for m in per_fold) / n,
        sum(m.f1 for m in per_fold) / n,
    )


class MatchCounts:
    """Per-relation-type TP/FP/FN tallies."""

    def __init__(self) -> None:
        self._counts: dict[RelationType, list[int]] = {}

    def add(self, rtype: RelationType, tp: int = 0, fp: int = 0, fn: int = 0) -> None:
        cell = self._counts.setdefault(rtype, [0, 0, 0])
        cell[0] += tp
        cell[1] += fp
        cell[2] += fn

    def merge(self, other: "MatchCounts") -> None:
        for rtype, (tp, fp, fn) in other._counts.items():
            self.add(rtype, tp, fp, fn)

    def for_type(self, rtype: RelationType) -> tuple[int, int, int]:
        tp, fp, fn = self._counts.get(rtype, (0, 0, 0))
        return tp, fp, fn

    def micro_total(self) -> tuple[int, int, int]:
        tp = sum(c[0] for c in self._counts.values())
        fp = sum(c[1] for c in self._counts.values())
        fn = sum(c[2] for c in self._counts.values())
        return tp, fp, fn


def match_relations(
    response: Iterable[RelationInstance], key: Iterable[RelationInstance]
) -> MatchCounts:
    """Exact-match scoring within one document; duplicates collapse."""
    response_set = {(r.rtype, r.arg1, r.arg2) for r in response if not r.rtype.is_null}
    key_set = {(r.rtype, r.arg1, r.arg2) for r in key if not r.rtype.is_null}
    counts = MatchCounts()
    for rtype, _, _ in response_set & key_set:
        counts.add(rtype, tp=1)
    for rtype, _, _ in response_set - key_set:
        counts.add(rtype, fp=1)
    for rtype, _, _ in key_set - response_set:
        counts.add(rtype, fn=1)
    return counts


@dataclass(frozen=True)
class FoldPlan:
    folds: tuple[tuple[str, ...], ...]
    seed: int

    @property
    def k(self) -> int:
        return len(self.folds)


def make_folds(corpus: Corpus, k: int = DEFAULT_FOLDS, seed: int = DEFAULT_SEED) -> FoldPlan:
    """Seeded shuffle, then round-robin deal into k document folds."""
    n = len(corpus)
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > n:
        raise ValueError(f"k={k} exceeds the document count {n}")
    ids = [doc.id for doc in corpus]
    random.Random(seed).shuffle(ids)
    return FoldPlan(tuple(tuple(ids[i::k]) for i in range(k)), seed)


@dataclass(frozen=True)
class FoldData:
    """Everything one fold needs: split instances, vectors, and matrices."""

    index_keys: int
    x_train: sparse.csr_matrix
    train_labels: tuple[str, ...]
    x_test: sparse.csr_matrix
    test_instances: tuple[LabeledInstance, ...]
    test_docs: tuple[Document, ...]


def prepare_folds(
    corpus: Corpus,
    feature_cfg: FeatureConfig,
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> list[FoldData]:
    """Shared preprocessing for every experiment driver.

    Feature vectors are extracted once per instance; each fold builds its own
    index from training folds only, so no test-only key receives a column.
    """
    plan = make_folds(corpus, k, seed)
    docs = {doc.id: doc for doc in corpus}
    per_doc: dict[str, tuple[tuple[LabeledInstance, ...], list[FeatureVector]]] = {}
    for doc in corpus:
        instances, _ = labeled_instances(doc, max_crossings)
        vectors = [extract(inst.pair, doc, feature_cfg) for inst in instances]
        per_doc[doc.id] = (instances, vectors)

    folds = []
    for f in range(plan.k):
        test_ids = set(plan.folds[f])
        train_vectors: list[FeatureVector] = []
        train_labels: list[str] = []
        test_vectors: list[FeatureVector] = []
        test_instances: list[LabeledInstance] = []
        for doc in corpus:
            instances, vectors = per_doc[doc.id]
            if doc.id in test_ids:
                test_vectors.extend(vectors)
                test_instances.extend(instances)
            else:
                train_vectors.extend(vectors)
                train_labels.extend(inst.label.value for inst in instances)
        index = build_index(train_vectors)
        folds.append(
            FoldData(
                index_keys=len(index),
                x_train=vectorize(train_vectors, index),
                train_labels=tuple(train_labels),
                x_test=vectorize(test_vectors, index),
                test_instances=tuple(test_instances),
                test_docs=tuple(docs[i] for i in plan.folds[f]),
            )
        )
    return folds


def score_fold(
    fold: FoldData, predicted: Sequence[str]
) -> MatchCounts:
    """Match predicted labels for a fold's instances against its documents' gold."""
    by_doc: dict[str, list[RelationInstance]] = {doc.id: [] for doc in fold.test_docs}
    for inst, label in zip(fold.test_instances, predicted):
        rtype = RelationType(label)
        if not rtype.is_null:
            by_doc[inst.pair.doc_id].append(
                RelationInstance(rtype, inst.pair.arg1, inst.pair.arg2)
            )
    counts = MatchCounts()
    for doc in fold.test_docs:
        counts.merge(match_relations(by_doc[doc.id], doc.relations))
    return counts


@dataclass(frozen=True)
class FoldResult:
    fold: int
    per_type: dict[RelationType, Metrics | None]
    overall: Metrics
    n_train: int
    n_test: int
    n_features: int


@dataclass(frozen=True)
class CvReport:
    algorithm: str
    k: int
    seed: int
    per_type: dict[RelationType, Metrics | None]
    overall: Metrics
    folds: tuple[FoldResult, ...]
    runtime_seconds: float

    def to_obj(self, include_runtime: bool = True) -> dict:
        obj = {
            "algorithm": self.algorithm,
            "k": self.k,
            "seed": self.seed,
            "per_type": {
                rtype.value: _metrics_obj(self.per_type.get(rtype))
                for rtype in RELATION_TYPES
            },
            "overall": _metrics_obj(self.overall),
        }
        if include_runtime:
            obj["runtime_seconds"] = self.runtime_seconds
        return obj

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_obj(include_runtime), ensure_ascii=False, separators=(",", ":"))


def _metrics_obj(m: Metrics | None) -> dict | None:
    if m is None:
        return None
    return {"p": m.p, "r": m.r, "f1": m.f1}


def fold_metrics(counts: MatchCounts) -> tuple[dict[RelationType, Metrics | None], Metrics]:
    """Per-type metrics (None when the type is absent from gold and response) plus the micro overall."""
    per_type: dict[RelationType, Metrics | None] = {}
    for rtype in RELATION_TYPES:
        tp, fp, fn = counts.for_type(rtype)
        per_type[rtype] = None if tp + fp + fn == 0 else prf(tp, fp, fn)
    overall = prf(*counts.micro_total())
    return per_type, overall


def aggregate_folds(fold_results: Sequence[FoldResult]) -> tuple[dict[RelationType, Metrics | None], Metrics]:
    """Macro-average per type over contributing folds; overall over all folds."""
    per_type: dict[RelationType, Metrics | None] = {}
    for rtype in RELATION_TYPES:
        contributing = [fr.per_type[rtype] for fr in fold_results if fr.per_type[rtype] is not None]
        per_type[rtype] = macro_average(contributing)
    overall = macro_average([fr.overall for fr in fold_results])
    assert overall is not None
    return per_type, overall


def run_cv(
    corpus: Corpus,
    algorithm: str,
    params: Params | None = None,
    feature_cfg: FeatureConfig = FeatureConfig(),
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    folds: list[FoldData] | None = None,
) -> CvReport:
    """Full k-fold protocol for one algorithm/config pair."""
    if params is None:
        params = params_for(algorithm)
    if folds is None:
        folds = prepare_folds(corpus, feature_cfg, k, seed, max_crossings)
    classes = [r.value for r in RELATION_TYPES]
    results = []
    runtime = 0.0
    for f, fold in enumerate(folds):
        started = time.perf_counter()
        model = ova_train(fold.x_train, fold.train_labels, algorithm, params, classes=classes)
        predicted = ova_classify(model, fold.x_test)
        runtime += time.perf_counter() - started
        counts = score_fold(fold, predicted)
        per_type, overall = fold_metrics(counts)
        results.append(
            FoldResult(
                fold=f,
                per_type=per_type,
                overall=overall,
                n_train=fold.x_train.shape[0],
                n_test=fold.x_test.shape[0],
                n_features=fold.index_keys,
            )
        )
    per_type, overall = aggregate_folds(results)
    return CvReport(
        algorithm=algorithm,
        k=len(folds),
        seed=seed,
        per_type=per_type,
        overall=overall,
        folds=tuple(results),
        runtime_seconds=runtime,
    )


def count_instances(corpus: Corpus, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> dict[RelationType, int]:
    """Labeled non-null instance count per type over the whole corpus."""
    counts = {rtype: 0 for rtype in RELATION_TYPES}
    for doc in corpus:
        instances, _ = labeled_instances(doc, max_crossings)
        for inst in instances:
            if not inst.label.is_null:
                counts[inst.label] += 1
    return counts
