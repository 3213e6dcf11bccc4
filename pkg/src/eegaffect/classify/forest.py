"""Bagged random forest with majority voting.

Tree ``t`` draws its bootstrap sample and its per-node feature subsets from
``default_rng([master_seed, t])``, so a forest is the same whatever order or
worker its trees were grown on.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.classify.tree import (
    TreeNode,
    TreeParams,
    check_training_data,
    check_width,
    fit_tree,
    predict_tree,
)
from eegaffect.data.models import N_CLASSES
from eegaffect.parallel import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForestParams:
    """Forest hyperparameters. ``mtry=None`` resolves to floor(√p) at fit time."""

    n_trees: int = 100
    mtry: int | None = None
    max_depth: int | None = None
    min_samples_split: int = 2
    master_seed: int = 42

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")
        if self.mtry is not None and self.mtry < 1:
            raise ValueError(f"mtry must be >= 1, got {self.mtry}")
        if self.master_seed < 0:
            raise ValueError(f"master_seed must be >= 0, got {self.master_seed}")
        TreeParams(max_depth=self.max_depth, min_samples_split=self.min_samples_split)

    def resolve_mtry(self, p: int) -> int:
        mtry = self.mtry if self.mtry is not None else max(1, math.isqrt(p))
        if mtry > p:
            raise ValueError(f"mtry={mtry} exceeds the {p} available features")
        return mtry

    def tree_params(self, p: int) -> TreeParams:
        return TreeParams(
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            mtry=self.resolve_mtry(p),
        )


@dataclass(frozen=True)
class ForestModel:
    """Trained forest. Immutable; safe to share between threads."""

    trees: tuple[TreeNode, ...]
    params: ForestParams
    mtry: int
    n_features: int
    feature_names: tuple[str, ...] = ()
    classes: tuple[int, ...] = tuple(range(N_CLASSES))

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    def tree_votes(self, X: ArrayLike) -> NDArray[np.int64]:
        """Per-tree predicted class codes, shape (n_trees, n)."""
        Xa = check_width(X, self.n_features)
        return np.stack([predict_tree(tree, Xa) for tree in self.trees])

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        """Vote fractions per class, shape (n, 4); each row sums to 1."""
        votes = self.tree_votes(X)
        counts = np.stack(
            [np.sum(votes == c, axis=0) for c in range(N_CLASSES)], axis=1
        )
        return counts / float(self.n_trees)

    def predict(self, X: ArrayLike) -> NDArray[np.int64]:
        """Majority vote; ties go to the lowest class code."""
        return np.argmax(self.predict_proba(X), axis=1).astype(np.int64)


def fit_forest(
    X: ArrayLike,
    labels: ArrayLike,
    params: ForestParams | None = None,
    threads: int = 1,
    feature_names: tuple[str, ...] = (),
) -> ForestModel:
    """Grow ``params.n_trees`` trees on bootstrap samples of (X, labels).

    Args:
        X: n x p training matrix.
        labels: n class codes.
        params: Forest hyperparameters.
        threads: Worker count for tree growth; the model does not depend on it.
        feature_names: Column names stored with the model.

    Returns:
        The trained ForestModel.

    Raises:
        ValueError: Empty input, mismatched shapes, or mtry > p.
    """
    params = params or ForestParams()
    Xa, ya = check_training_data(X, labels)
    n, p = Xa.shape
    tree_params = params.tree_params(p)

    def grow(t: int) -> TreeNode:
        rng = np.random.default_rng([params.master_seed, t])
        rows = rng.integers(0, n, size=n)
        return fit_tree(Xa[rows], ya[rows], tree_params, rng)

    trees = parallel_map(grow, list(range(params.n_trees)), threads)
    logger.info(
        "Random forest fitted: %d trees, mtry=%d, n=%d, p=%d",
        params.n_trees,
        tree_params.mtry,
        n,
        p,
    )
    return ForestModel(
        trees=tuple(trees),
        params=params,
        mtry=params.resolve_mtry(p),
        n_features=p,
        feature_names=feature_names,
    )
