"""Experiment drivers: algorithm comparison, margin sweep, feature ablation,
and a learning curve over document-prefix subsets.

Each driver returns a report object that renders a tab-separated table and a
machine-readable JSON document.  JSON output with runtimes excluded is
byte-stable for a fixed corpus, configuration, and seed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .features import FeatureConfig
from .harness import (
    DEFAULT_FOLDS,
    DEFAULT_SEED,
    CvReport,
    FoldResult,
    Metrics,
    aggregate_folds,
    count_instances,
    fold_metrics,
    prepare_folds,
    run_cv,
    score_fold,
)
from .learners import (
    ALGORITHMS,
    NULL_LABEL,
    KernelCache,
    SvmParams,
    apply_uneven_margin,
    params_for,
    smo_train,
    svm_decision,
)
from .pairing import DEFAULT_MAX_CROSSINGS
from .schema import RELATION_TYPES, REPORT_LABELS, REPORT_ORDER, RelationType

ALGORITHM_LABELS = {
    "nb": "Naive Bayes",
    "c45": "C4.5",
    "knn": "KNN",
    "paum": "PAUM",
    "svm": "SVM UM",
}

DEFAULT_TAU_VALUES = (1.0, 0.8, 0.6, 0.4, 0.2)

# Cumulative feature sequence: each column adds one set to the previous one,
# then the two alias configurations, then the syntactic additions.
ABLATION_STEPS = (
    ("Tok6+Atype", ("tok6", "atype")),
    ("+Dir", ("tok6", "atype", "dir")),
    ("+Str", ("tok6", "atype", "dir", "str")),
    ("+POS", ("tok6", "atype", "dir", "str", "pos")),
    ("+Inter", ("tok6", "atype", "dir", "str", "pos", "inter")),
    ("+Event", ("tok6", "atype", "dir", "str", "pos", "inter", "event")),
    ("Allgen", ("allgen",)),
    ("NoTok", ("notok",)),
)
ABLATION_SYNTACTIC_STEPS = (
    ("+Event", ("tok6", "atype", "dir", "str", "pos", "inter", "event")),
    ("+Dep", ("tok6", "atype", "dir", "str", "pos", "inter", "event", "dep")),
    ("+Syndist", ("tok6", "atype", "dir", "str", "pos", "inter", "event", "dep", "syndist")),
)


def _fmt_pct(value: float | None) -> str:
    return "-" if value is None else f"{value * 100:.2f}"


def _metric_cell(m: Metrics | None, which: str) -> str:
    if m is None:
        return "-"
    return _fmt_pct(getattr(m, which))


def _type_rows(column_values) -> list[list[str]]:
    """Shared P/R/F1 row block: one triple per relation type, then Overall.

    column_values: list of (per_type dict, overall Metrics) pairs, one per column.
    """
    rows = []
    for rtype in REPORT_ORDER:
        for i, which in enumerate(("p", "r", "f1")):
            label = REPORT_LABELS[rtype] if i == 0 else ""
            metric = {"p": "P", "r": "R", "f1": "F1"}[which]
            cells = [_metric_cell(per_type.get(rtype), which) for per_type, _ in column_values]
            rows.append([label, metric] + cells)
    for i, which in enumerate(("p", "r", "f1")):
        label = "Overall" if i == 0 else ""
        metric = {"p": "P", "r": "R", "f1": "F1"}[which]
        cells = [_metric_cell(overall, which) for _, overall in column_values]
        rows.append([label, metric] + cells)
    return rows


def _render(rows: list[list[str]]) -> str:
    return "\n".join("\t".join(row) for row in rows) + "\n"


@dataclass(frozen=True)
class AlgorithmsReport:
    reports: dict[str, CvReport]

    def to_table(self) -> str:
        columns = [(ALGORITHM_LABELS[a], self.reports[a]) for a in ALGORITHMS]
        header = ["Relationship type", "Metric (%)"] + [label for label, _ in columns]
        rows = [header]
        rows.extend(_type_rows([(r.per_type, r.overall) for _, r in columns]))
        rows.append(
            ["Run Time in seconds", ""] + [f"{r.runtime_seconds:.2f}" for _, r in columns]
        )
        return _render(rows)

    def to_obj(self, include_runtime: bool = True) -> dict:
        return {
            "experiment": "algorithms",
            "columns": [
                {
                    "label": ALGORITHM_LABELS[a],
                    "algorithm": a,
                    "report": self.reports[a].to_obj(include_runtime),
                }
                for a in ALGORITHMS
            ],
        }

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_obj(include_runtime), ensure_ascii=False, separators=(",", ":"))


def experiment_algorithms(
    corpus: Corpus,
    feature_cfg: FeatureConfig = FeatureConfig(),
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> AlgorithmsReport:
    """All five learners at their default settings on one shared fold plan."""
    folds = prepare_folds(corpus, feature_cfg, k, seed, max_crossings)
    reports = {}
    for algorithm in ALGORITHMS:
        reports[algorithm] = run_cv(
            corpus, algorithm, feature_cfg=feature_cfg, k=k, seed=seed,
            max_crossings=max_crossings, folds=folds,
        )
    return AlgorithmsReport(reports)


@dataclass(frozen=True)
class TauSweepReport:
    values: tuple[float, ...]
    per_value: dict[float, tuple[dict[RelationType, Metrics | None], Metrics]]
    k: int
    seed: int
    runtime_seconds: float

    def to_table(self) -> str:
        header = ["Uneven margin (τ)", "Metric (%)"] + [f"{v:g}" for v in self.values]
        rows = [header]
        for i, which in enumerate(("p", "r", "f1")):
            label = "Overall Relations" if i == 0 else ""
            metric = {"p": "P", "r": "R", "f1": "F1"}[which]
            cells = [_metric_cell(self.per_value[v][1], which) for v in self.values]
            rows.append([label, metric] + cells)
        return _render(rows)

    def to_obj(self, include_runtime: bool = True) -> dict:
        obj = {
            "experiment": "tau-sweep",
            "k": self.k,
            "seed": self.seed,
            "columns": [
                {
                    "tau": v,
                    "per_type": {
                        rtype.value: _obj_or_none(self.per_value[v][0].get(rtype))
                        for rtype in RELATION_TYPES
                    },
                    "overall": _obj_or_none(self.per_value[v][1]),
                }
                for v in self.values
            ],
        }
        if include_runtime:
            obj["runtime_seconds"] = self.runtime_seconds
        return obj

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_obj(include_runtime), ensure_ascii=False, separators=(",", ":"))


def _obj_or_none(m: Metrics | None) -> dict | None:
    if m is None:
        return None
    return {"p": m.p, "r": m.r, "f1": m.f1}


def experiment_tau_sweep(
    corpus: Corpus,
    values: tuple[float, ...] = DEFAULT_TAU_VALUES,
    params: SvmParams | None = None,
    feature_cfg: FeatureConfig = FeatureConfig(),
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> TauSweepReport:
    """Margin sweep over one SVM solution per fold and class.

    The margin parameter only rescales and shifts the decision function, so
    each base solution is solved once and every tau is applied to it.
    """
    if not values:
        raise ValueError("at least one tau value is required")
    if params is None:
        params = params_for("svm")
    folds = prepare_folds(corpus, feature_cfg, k, seed, max_crossings)
    classes = [r.value for r in RELATION_TYPES]
    started = time.perf_counter()

    fold_results: dict[float, list[FoldResult]] = {v: [] for v in values}
    for f, fold in enumerate(folds):
        labels = np.asarray(fold.train_labels, dtype=object)
        cache = (
            KernelCache(fold.x_train, params.kernel, params.cache_mb)
            if fold.x_train.shape[0] > 0
            else None
        )
        solutions = {}
        for cls in classes:
            y = np.where(labels == cls, 1.0, -1.0)
            if y.size == 0 or not (y > 0).any() or not (y < 0).any():
                solutions[cls] = None
            else:
                solutions[cls] = smo_train(
                    fold.x_train, y, c=params.c, kernel=params.kernel,
                    tol=params.tol, cache=cache,
                )
        for v in values:
            cols = []
            for cls in classes:
                sol = solutions[cls]
                if sol is None:
                    cols.append(np.full(fold.x_test.shape[0], -1.0))
                else:
                    cols.append(svm_decision(apply_uneven_margin(sol, v), fold.x_test))
            scores = np.column_stack(cols) if cols else np.zeros((0, 0))
            best = np.argmax(scores, axis=1)
            predicted = [
                classes[j] if scores[i, j] > 0.0 else NULL_LABEL
                for i, j in enumerate(best)
            ]
            counts = score_fold(fold, predicted)
            per_type, overall = fold_metrics(counts)
            fold_results[v].append(
                FoldResult(
                    fold=f, per_type=per_type, overall=overall,
                    n_train=fold.x_train.shape[0], n_test=fold.x_test.shape[0],
                    n_features=fold.index_keys,
                )
            )

    per_value = {v: aggregate_folds(fold_results[v]) for v in values}
    return TauSweepReport(
        values=tuple(values),
        per_value=per_value,
        k=len(folds),
        seed=seed,
        runtime_seconds=time.perf_counter() - started,
    )


@dataclass(frozen=True)
class AblationReport:
    columns: tuple[tuple[str, tuple[str, ...], CvReport], ...]
    syntactic_columns: tuple[tuple[str, tuple[str, ...], CvReport], ...]

    def _table_for(self, columns) -> str:
        header = ["Relationship type", "Metric (%)"] + [label for label, _, _ in columns]
        rows = [header]
        rows.extend(_type_rows([(r.per_type, r.overall) for _, _, r in columns]))
        return _render(rows)

    def to_table(self) -> str:
        return self._table_for(self.columns) + "\n" + self._table_for(self.syntactic_columns)

    def to_obj(self, include_runtime: bool = True) -> dict:
        def cols(columns):
            return [
                {
                    "label": label,
                    "features": list(sets),
                    "report": report.to_obj(include_runtime),
                }
                for label, sets, report in columns
            ]

        return {
            "experiment": "ablation",
            "columns": cols(self.columns),
            "syntactic_columns": cols(self.syntactic_columns),
        }

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_obj(include_runtime), ensure_ascii=False, separators=(",", ":"))


def experiment_ablation(
    corpus: Corpus,
    algorithm: str = "svm",
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> AblationReport:
    """Cumulative feature columns, alias configurations, then syntactic additions."""
    cache: dict[tuple[str, ...], CvReport] = {}

    def run(sets: tuple[str, ...]) -> CvReport:
        if sets not in cache:
            cache[sets] = run_cv(
                corpus, algorithm, feature_cfg=FeatureConfig.of(*sets),
                k=k, seed=seed, max_crossings=max_crossings,
            )
        return cache[sets]

    columns = tuple((label, sets, run(sets)) for label, sets in ABLATION_STEPS)
    syntactic = tuple((label, sets, run(sets)) for label, sets in ABLATION_SYNTACTIC_STEPS)
    return AblationReport(columns=columns, syntactic_columns=syntactic)


@dataclass(frozen=True)
class LearningCurveReport:
    sizes: tuple[int, ...]
    counts: dict[int, dict[RelationType, int]]
    reports: dict[int, CvReport]

    def to_table(self) -> str:
        rows = [["Corpus size"]]
        header = ["Relationship type", "Metric (%)"] + [f"C{n}" for n in self.sizes]
        rows.append(header)
        for rtype in REPORT_ORDER:
            rows.append(
                [REPORT_LABELS[rtype], "Count"]
                + [str(self.counts[n][rtype]) for n in self.sizes]
            )
            for which in ("p", "r", "f1"):
                metric = {"p": "P", "r": "R", "f1": "F1"}[which]
                cells = [
                    _metric_cell(self.reports[n].per_type.get(rtype), which)
                    for n in self.sizes
                ]
                rows.append(["", metric] + cells)
        rows.append(
            ["Overall", "Count"]
            + [str(sum(self.counts[n].values())) for n in self.sizes]
        )
        for which in ("p", "r", "f1"):
            metric = {"p": "P", "r": "R", "f1": "F1"}[which]
            cells = [_metric_cell(self.reports[n].overall, which) for n in self.sizes]
            rows.append(["", metric] + cells)
        return _render(rows)

    def to_obj(self, include_runtime: bool = True) -> dict:
        return {
            "experiment": "learning-curve",
            "columns": [
                {
                    "label": f"C{n}",
                    "size": n,
                    "counts": {
                        rtype.value: self.counts[n][rtype] for rtype in RELATION_TYPES
                    },
                    "report": self.reports[n].to_obj(include_runtime),
                }
                for n in self.sizes
            ],
        }

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_obj(include_runtime), ensure_ascii=False, separators=(",", ":"))


def curve_sizes(n_docs: int) -> tuple[int, ...]:
    """Half, three-quarters, and all documents; (20, 30, 40) for a 40-doc corpus."""
    sizes = sorted({max(2, round(n_docs * 0.5)), max(2, round(n_docs * 0.75)), n_docs})
    return tuple(sizes)


def experiment_learning_curve(
    corpus: Corpus,
    algorithm: str = "svm",
    sizes: tuple[int, ...] | None = None,
    feature_cfg: FeatureConfig = FeatureConfig(),
    k: int = DEFAULT_FOLDS,
    seed: int = DEFAULT_SEED,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
) -> LearningCurveReport:
    """Document-prefix subsets of increasing size, each under the full protocol."""
    if sizes is None:
        sizes = curve_sizes(len(corpus))
    if any(n < 2 or n > len(corpus) for n in sizes):
        raise ValueError("subset sizes must lie within 2..document count")
    if tuple(sorted(sizes)) != tuple(sizes):
        raise ValueError("subset sizes must be increasing")
    counts = {}
    reports = {}
    for n in sizes:
        subset = corpus.subset(n)
        counts[n] = count_instances(subset, max_crossings)
        reports[n] = run_cv(
            subset, algorithm, feature_cfg=feature_cfg,
            k=min(k, n), seed=seed, max_crossings=max_crossings,
        )
    return LearningCurveReport(sizes=tuple(sizes), counts=counts, reports=reports)
