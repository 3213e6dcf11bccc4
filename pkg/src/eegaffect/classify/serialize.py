"""Versioned JSON model documents.

Every document carries ``format``, ``version`` and ``kind`` plus the
hyperparameters, seeds and learned state of the model. Floats are written
with ``repr`` precision, so loading a saved model reproduces it bit for bit,
and keys are sorted so the same model always serializes to the same bytes.

A model saved together with its min-max scaler carries a ``scaler`` object
holding the fitted column minima and maxima; :func:`load_scaled_model`
restores both, so predictions can be made directly on raw feature rows.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Final

import numpy as np

from eegaffect.classify.forest import ForestModel, ForestParams
from eegaffect.classify.naive_bayes import NbModel
from eegaffect.classify.perceptron import DEFAULT_PATIENCE, PerceptronModel
from eegaffect.classify.registry import Model, ScaledModel, model_kind
from eegaffect.classify.tree import DecisionTreeModel, Leaf, Split, TreeNode, TreeParams
from eegaffect.ingestion.preprocess import MinMaxScaler

logger = logging.getLogger(__name__)

MODEL_FORMAT: Final[str] = "eegaffect-model"
MODEL_VERSION: Final[int] = 1


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


def node_to_dict(node: TreeNode) -> dict[str, Any]:
    if isinstance(node, Leaf):
        return {"counts": list(node.class_counts)}
    return {
        "counts": list(node.class_counts),
        "feature": node.feature,
        "threshold": node.threshold,
        "decrease": node.impurity_decrease,
        "left": node_to_dict(node.left),
        "right": node_to_dict(node.right),
    }


def node_from_dict(doc: dict[str, Any]) -> TreeNode:
    counts = tuple(int(c) for c in doc["counts"])
    if "feature" not in doc:
        return Leaf(counts)
    return Split(
        feature=int(doc["feature"]),
        threshold=float(doc["threshold"]),
        left=node_from_dict(doc["left"]),
        right=node_from_dict(doc["right"]),
        class_counts=counts,
        impurity_decrease=float(doc["decrease"]),
    )


def _tree_params_to_dict(params: TreeParams) -> dict[str, Any]:
    return {
        "max_depth": params.max_depth,
        "min_samples_split": params.min_samples_split,
        "mtry": params.mtry,
    }


def _tree_params_from_dict(doc: dict[str, Any]) -> TreeParams:
    return TreeParams(
        max_depth=doc["max_depth"],
        min_samples_split=int(doc["min_samples_split"]),
        mtry=doc["mtry"],
    )


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def model_to_dict(model: Model | ScaledModel) -> dict[str, Any]:
    """Build the JSON-ready document for any trained model."""
    if isinstance(model, ScaledModel):
        doc = model_to_dict(model.model)
        doc["scaler"] = _scaler_to_dict(model.scaler)
        return doc
    kind = model_kind(model)
    doc: dict[str, Any] = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": kind,
    }
    if isinstance(model, ForestModel):
        p = model.params
        doc["params"] = {
            "n_trees": p.n_trees,
            "mtry": p.mtry,
            "max_depth": p.max_depth,
            "min_samples_split": p.min_samples_split,
            "master_seed": p.master_seed,
        }
        doc["mtry"] = model.mtry
        doc["n_features"] = model.n_features
        doc["feature_names"] = list(model.feature_names)
        doc["classes"] = list(model.classes)
        # Tree t was grown from the stream seeded with [master_seed, t].
        doc["tree_seeds"] = [[p.master_seed, t] for t in range(model.n_trees)]
        doc["trees"] = [node_to_dict(tree) for tree in model.trees]
    elif isinstance(model, DecisionTreeModel):
        doc["params"] = _tree_params_to_dict(model.params)
        doc["seed"] = model.seed
        doc["n_features"] = model.n_features
        doc["feature_names"] = list(model.feature_names)
        doc["tree"] = node_to_dict(model.root)
    elif isinstance(model, NbModel):
        doc["classes"] = list(model.classes)
        doc["priors"] = model.priors.tolist()
        doc["means"] = model.means.tolist()
        doc["variances"] = model.variances.tolist()
    else:
        doc["params"] = {
            "epochs_trained": model.epochs_trained,
            "learning_rate": model.learning_rate,
            "seed": model.seed,
            "patience": model.patience,
        }
        doc["converged"] = list(model.converged)
        doc["weights"] = model.weights.tolist()
        doc["biases"] = model.biases.tolist()
    return doc


def model_from_dict(doc: dict[str, Any]) -> Model:
    """Rebuild a model from :func:`model_to_dict` output.

    Raises:
        ValueError: Wrong format tag, unsupported version or unknown kind.
    """
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"Not a model document: format={doc.get('format')!r}")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"Unsupported model document version {doc.get('version')!r}")
    kind = doc.get("kind")
    try:
        if kind == "rf":
            return ForestModel(
                trees=tuple(node_from_dict(t) for t in doc["trees"]),
                params=ForestParams(**doc["params"]),
                mtry=int(doc["mtry"]),
                n_features=int(doc["n_features"]),
                feature_names=tuple(doc["feature_names"]),
                classes=tuple(int(c) for c in doc["classes"]),
            )
        if kind == "tree":
            return DecisionTreeModel(
                root=node_from_dict(doc["tree"]),
                n_features=int(doc["n_features"]),
                params=_tree_params_from_dict(doc["params"]),
                seed=int(doc["seed"]),
                feature_names=tuple(doc["feature_names"]),
            )
        if kind == "nb":
            return NbModel(
                classes=tuple(int(c) for c in doc["classes"]),
                priors=np.asarray(doc["priors"], dtype=np.float64),
                means=np.asarray(doc["means"], dtype=np.float64),
                variances=np.asarray(doc["variances"], dtype=np.float64),
            )
        if kind == "perceptron":
            trained = doc["params"]
            return PerceptronModel(
                weights=np.asarray(doc["weights"], dtype=np.float64),
                biases=np.asarray(doc["biases"], dtype=np.float64),
                epochs_trained=int(trained["epochs_trained"]),
                converged=tuple(bool(v) for v in doc["converged"]),
                learning_rate=float(trained["learning_rate"]),
                seed=int(trained["seed"]),
                patience=int(trained.get("patience", DEFAULT_PATIENCE)),
            )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"Malformed {kind} model document: {exc}") from exc
    raise ValueError(f"Unknown model kind {kind!r}")


def scaled_model_from_dict(doc: dict[str, Any]) -> ScaledModel:
    """Rebuild a model and its scaler; documents without one load unscaled.

    Raises:
        ValueError: As :func:`model_from_dict`, or a malformed ``scaler``.
    """
    model = model_from_dict(doc)
    return ScaledModel(model=model, scaler=_scaler_from_dict(doc.get("scaler")))


def dumps_model(model: Model | ScaledModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=1) + "\n"


def save_model(model: Model | ScaledModel, path: str | Path) -> None:
    """Write the model document to *path*."""
    Path(path).write_text(dumps_model(model), encoding="utf-8")
    inner = model.model if isinstance(model, ScaledModel) else model
    logger.info("Saved %s model to %s", model_kind(inner), path)


def _read_document(path: str | Path) -> dict[str, Any]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: model document must be a JSON object")
    return doc


def load_model(path: str | Path) -> Model:
    """Read a model document written by :func:`save_model`.

    Any saved scaler is ignored; use :func:`load_scaled_model` to keep it.

    Raises:
        ValueError: The file is not valid JSON or not a model document.
    """
    return model_from_dict(_read_document(path))


def load_scaled_model(path: str | Path) -> ScaledModel:
    """Read a model document together with its saved scaler.

    Raises:
        ValueError: The file is not valid JSON or not a model document.
    """
    return scaled_model_from_dict(_read_document(path))


# ---------------------------------------------------------------------------
# Scalers
# ---------------------------------------------------------------------------


def _scaler_to_dict(scaler: MinMaxScaler | None) -> dict[str, Any] | None:
    if scaler is None:
        return None
    return {"minimum": scaler.minimum.tolist(), "maximum": scaler.maximum.tolist()}


def _scaler_from_dict(doc: dict[str, Any] | None) -> MinMaxScaler | None:
    if doc is None:
        return None
    try:
        minimum = np.asarray(doc["minimum"], dtype=np.float64)
        maximum = np.asarray(doc["maximum"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"Malformed scaler in model document: {exc}") from exc
    if minimum.ndim != 1 or minimum.shape != maximum.shape:
        raise ValueError(
            f"Scaler minimum {minimum.shape} and maximum {maximum.shape} differ"
        )
    return MinMaxScaler(minimum=minimum, maximum=maximum)
