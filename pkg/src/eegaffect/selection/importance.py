"""Impurity-based feature importance of trained tree models."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.classify.forest import ForestModel
from eegaffect.classify.tree import DecisionTreeModel, TreeNode, iter_splits
from eegaffect.selection.mrmr import Criterion, SelectionResult

logger = logging.getLogger(__name__)


def _accumulate(root: TreeNode, out: NDArray[np.float64]) -> None:
    n_root = sum(root.class_counts)
    for split in iter_splits(root):
        weight = sum(split.class_counts) / n_root
        out[split.feature] += weight * split.impurity_decrease


def gini_importance(
    model: ForestModel | DecisionTreeModel, p: int
) -> NDArray[np.float64]:
    """Mean decrease in GINI impurity per feature, normalized to sum 1.

    Each split on feature j adds (samples at node / samples at root) × its
    impurity decrease. Features never split on get 0; a model without any
    split gives the all-zero vector.

    Raises:
        ValueError: The model has no trees or was trained on a different p.
    """
    trees: tuple[TreeNode, ...]
    if isinstance(model, ForestModel):
        trees = model.trees
    else:
        trees = (model.root,)
    if not trees:
        raise ValueError("Model has no trained trees")
    if model.n_features != p:
        raise ValueError(f"Model was trained on {model.n_features} features, not {p}")
    importance = np.zeros(p)
    for root in trees:
        _accumulate(root, importance)
    total = importance.sum()
    if total > 0:
        importance /= total
    return importance


def select_by_importance(importance: ArrayLike, k: int) -> SelectionResult:
    """Top-``k`` columns by importance; ties go to the lowest column index."""
    imp = np.asarray(importance, dtype=np.float64).ravel()
    if not 1 <= k <= imp.size:
        raise ValueError(f"k must be in 1..{imp.size}, got {k}")
    order = np.argsort(-imp, kind="stable")[:k]
    chosen = tuple(int(j) for j in order)
    scores = tuple(float(imp[j]) for j in chosen)
    logger.info("Importance ranking selected %d of %d columns", k, imp.size)
    return SelectionResult(
        chosen=chosen,
        scores=scores,
        relevance=scores,
        redundancy=(0.0,) * k,
        criterion=Criterion.GINI_IMPORTANCE,
    )
