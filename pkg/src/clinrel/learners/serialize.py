"""Versioned JSON serialization for trained models.

The record carries everything prediction needs: algorithm, hyperparameters,
feature configuration and index, and per-class binary-model parameters.
Floats are written in shortest round-trip form, so reloaded models reproduce
decision values exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from ..features import FeatureConfig, FeatureIndex
from .decision_tree import DecisionTree, Leaf, Node, Split
from .knn import KnnModel
from .multiclass import OvaModel, _Constant
from .naive_bayes import NaiveBayesModel
from .params import KernelSpec, KnnParams, NbParams, PaumParams, SvmParams, TreeParams
from .paum import PaumModel
from .svm import SvmModel

FORMAT_NAME = "clinrel-model"
FORMAT_VERSION = 1

_PARAM_TYPES = {
    "nb": NbParams,
    "c45": TreeParams,
    "knn": KnnParams,
    "paum": PaumParams,
    "svm": SvmParams,
}


@dataclass(frozen=True)
class TrainedModel:
    """A trained multi-class model plus the plumbing needed to apply it."""

    ova: OvaModel
    index: FeatureIndex
    feature_config: FeatureConfig
    max_crossings: int


class ModelFormatError(Exception):
    """The record is not a readable model of a supported version."""


def _csr_to_obj(x: sparse.csr_matrix) -> dict:
    return {
        "shape": [int(x.shape[0]), int(x.shape[1])],
        "data": x.data.tolist(),
        "indices": x.indices.tolist(),
        "indptr": x.indptr.tolist(),
    }


def _csr_from_obj(obj: dict) -> sparse.csr_matrix:
    return sparse.csr_matrix(
        (
            np.asarray(obj["data"], dtype=np.float64),
            np.asarray(obj["indices"], dtype=np.int32),
            np.asarray(obj["indptr"], dtype=np.int32),
        ),
        shape=tuple(obj["shape"]),
    )


def _node_to_obj(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": {"label": node.label, "n": node.n, "errors": node.errors}}
    return {
        "split": {
            "attribute": node.attribute,
            "threshold": node.threshold,
            "majority": node.majority,
            "n": node.n,
            "errors": node.errors,
        },
        "low": _node_to_obj(node.low),
        "high": _node_to_obj(node.high),
    }


def _node_from_obj(obj: dict) -> Node:
    if "leaf" in obj:
        leaf = obj["leaf"]
        return Leaf(leaf["label"], leaf["n"], leaf["errors"])
    split = obj["split"]
    return Split(
        split["attribute"],
        split["threshold"],
        _node_from_obj(obj["low"]),
        _node_from_obj(obj["high"]),
        split["majority"],
        split["n"],
        split["errors"],
    )


def _binary_to_obj(model) -> dict:
    if isinstance(model, _Constant):
        return {"kind": "constant", "score": model.score}
    if isinstance(model, NaiveBayesModel):
        return {
            "kind": "nb",
            "classes": list(model.classes),
            "log_priors": model.log_priors.tolist(),
            "log_p_present": model.log_p_present.tolist(),
            "log_p_absent": model.log_p_absent.tolist(),
        }
    if isinstance(model, DecisionTree):
        return {"kind": "c45", "classes": list(model.classes), "root": _node_to_obj(model.root)}
    if isinstance(model, KnnModel):
        return {"kind": "knn", "k": model.k, "labels": list(model.labels), "x": _csr_to_obj(model.x)}
    if isinstance(model, PaumModel):
        return {
            "kind": "paum",
            "weights": model.weights.tolist(),
            "bias": model.bias,
            "bias_feature": model.bias_feature,
            "opt_b": model.opt_b,
            "converged": model.converged,
            "epochs": model.epochs,
        }
    if isinstance(model, SvmModel):
        return {
            "kind": "svm",
            "support": _csr_to_obj(model.support),
            "coef": model.coef.tolist(),
            "intercept": model.intercept,
            "kernel": {"kind": model.kernel.kind, "degree": model.kernel.degree},
            "tau": model.tau,
        }
    raise ModelFormatError(f"cannot serialize binary model of type {type(model).__name__}")


def _binary_from_obj(obj: dict):
    kind = obj["kind"]
    if kind == "constant":
        return _Constant(obj["score"])
    if kind == "nb":
        return NaiveBayesModel(
            tuple(obj["classes"]),
            np.asarray(obj["log_priors"], dtype=np.float64),
            np.asarray(obj["log_p_present"], dtype=np.float64),
            np.asarray(obj["log_p_absent"], dtype=np.float64),
        )
    if kind == "c45":
        return DecisionTree(_node_from_obj(obj["root"]), tuple(obj["classes"]))
    if kind == "knn":
        return KnnModel(_csr_from_obj(obj["x"]), tuple(obj["labels"]), obj["k"])
    if kind == "paum":
        return PaumModel(
            np.asarray(obj["weights"], dtype=np.float64),
            obj["bias"],
            obj["bias_feature"],
            obj["opt_b"],
            obj["converged"],
            obj["epochs"],
        )
    if kind == "svm":
        return SvmModel(
            _csr_from_obj(obj["support"]),
            np.asarray(obj["coef"], dtype=np.float64),
            obj["intercept"],
            KernelSpec(obj["kernel"]["kind"], obj["kernel"]["degree"]),
            obj["tau"],
        )
    raise ModelFormatError(f"unknown binary model kind {kind!r}")


def _params_to_obj(params) -> dict:
    return asdict(params)


def _params_from_obj(algorithm: str, obj: dict):
    cls = _PARAM_TYPES[algorithm]
    if algorithm == "svm":
        obj = dict(obj)
        obj["kernel"] = KernelSpec(**obj["kernel"])
    return cls(**obj)


def model_to_json(tm: TrainedModel) -> str:
    record = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "algorithm": tm.ova.algorithm,
        "hyperparameters": _params_to_obj(tm.ova.params),
        "feature_sets": sorted(tm.feature_config.sets),
        "window": tm.feature_config.window,
        "max_crossings": tm.max_crossings,
        "null_label": tm.ova.null_label,
        "classes": list(tm.ova.classes),
        "feature_index": list(tm.index.keys),
        "models": [_binary_to_obj(m) for m in tm.ova.models],
    }
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def model_from_json(text: str) -> TrainedModel:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON ({exc.msg})") from exc
    if not isinstance(record, dict) or record.get("format") != FORMAT_NAME:
        raise ModelFormatError("not a model record")
    if record.get("version") != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model version {record.get('version')!r}")
    try:
        algorithm = record["algorithm"]
        params = _params_from_obj(algorithm, record["hyperparameters"])
        index = FeatureIndex(tuple(record["feature_index"]))
        cfg = FeatureConfig(frozenset(record["feature_sets"]), record["window"])
        ova = OvaModel(
            algorithm,
            tuple(record["classes"]),
            tuple(_binary_from_obj(m) for m in record["models"]),
            params,
            len(index),
            record["null_label"],
        )
        return TrainedModel(ova, index, cfg, record["max_crossings"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model record ({exc})") from exc


def save_model(tm: TrainedModel, path: str | Path) -> None:
    Path(path).write_text(model_to_json(tm) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> TrainedModel:
    return model_from_json(Path(path).read_text(encoding="utf-8"))
