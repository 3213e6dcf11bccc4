"""GINI decision tree shared by the forest and the single-tree baseline.

Nodes are immutable. A split sends ``x[feature] <= threshold`` to the left
child. Candidate thresholds are midpoints between consecutive distinct
values of each sampled feature; ties go to the lower feature index, then the
lower threshold. Growth stops at pure nodes, the depth cap, fewer than
``min_samples_split`` samples, or when no split lowers the weighted impurity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import N_CLASSES

logger = logging.getLogger(__name__)

# Smallest weighted-impurity decrease that counts as an improvement.
MIN_DECREASE: Final[float] = 1e-12


@dataclass(frozen=True)
class Leaf:
    """Terminal node holding the class counts of the samples that reached it."""

    class_counts: tuple[int, ...]

    @property
    def prediction(self) -> int:
        # argmax picks the first maximum: ties go to the lowest class code.
        return int(np.argmax(self.class_counts))


@dataclass(frozen=True)
class Split:
    """Internal node. ``impurity_decrease`` is parent − weighted children GINI."""

    feature: int
    threshold: float
    left: TreeNode
    right: TreeNode
    class_counts: tuple[int, ...]
    impurity_decrease: float


TreeNode = Leaf | Split


@dataclass(frozen=True)
class TreeParams:
    """Growth parameters; ``None`` means unlimited depth / all features."""

    max_depth: int | None = None
    min_samples_split: int = 2
    mtry: int | None = None

    def __post_init__(self) -> None:
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")
        if self.min_samples_split < 2:
            raise ValueError(
                f"min_samples_split must be >= 2, got {self.min_samples_split}"
            )
        if self.mtry is not None and self.mtry < 1:
            raise ValueError(f"mtry must be >= 1, got {self.mtry}")


def _gini_rows(
    counts: NDArray[np.float64], totals: NDArray[np.float64]
) -> NDArray[np.float64]:
    p = counts / totals[:, None]
    return np.asarray(np.sum(p * (1.0 - p), axis=1))


def gini_impurity(counts: ArrayLike) -> float:
    """G = Σ P(i)·(1 − P(i)) with P(i) = counts[i] / Σ counts.

    Raises:
        ValueError: If the counts are negative or sum to zero.
    """
    c = np.asarray(counts, dtype=np.float64).ravel()
    if np.any(c < 0) or c.sum() < 1:
        raise ValueError(
            f"gini_impurity needs non-negative counts summing to >= 1, got {c}"
        )
    return float(_gini_rows(c[None, :], np.array([c.sum()]))[0])


def _one_hot(y: NDArray[np.int64]) -> NDArray[np.float64]:
    out = np.zeros((y.size, N_CLASSES))
    out[np.arange(y.size), y] = 1.0
    return out


def _best_split(
    X: NDArray[np.float64],
    onehot: NDArray[np.float64],
    features: NDArray[np.intp],
) -> tuple[float, int, float] | None:
    """Return (weighted child impurity, feature, threshold) or None."""
    n = X.shape[0]
    n_left = np.arange(1, n, dtype=np.float64)
    n_right = n - n_left
    total = onehot.sum(axis=0)
    best: tuple[float, int, float] | None = None
    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        distinct = xs[1:] > xs[:-1]
        if not distinct.any():
            continue
        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = total - left
        score = (
            n_left * _gini_rows(left, n_left) + n_right * _gini_rows(right, n_right)
        ) / n
        score = np.where(distinct, score, np.inf)
        i = int(np.argmin(score))
        if best is None or score[i] < best[0]:
            threshold = float((xs[i] + xs[i + 1]) / 2.0)
            if not xs[i] <= threshold < xs[i + 1]:
                threshold = float(xs[i])
            best = (float(score[i]), int(f), threshold)
    return best


def _grow(
    X: NDArray[np.float64],
    onehot: NDArray[np.float64],
    depth: int,
    params: TreeParams,
    mtry: int,
    rng: np.random.Generator,
) -> TreeNode:
    counts_f = onehot.sum(axis=0)
    counts = tuple(int(c) for c in counts_f)
    n = X.shape[0]
    impurity = float(_gini_rows(counts_f[None, :], np.array([float(n)]))[0])
    if (
        impurity == 0.0
        or (params.max_depth is not None and depth >= params.max_depth)
        or n < params.min_samples_split
    ):
        return Leaf(counts)
    features = np.sort(rng.choice(X.shape[1], size=mtry, replace=False))
    found = _best_split(X, onehot, features)
    if found is None or found[0] >= impurity - MIN_DECREASE:
        return Leaf(counts)
    score, feature, threshold = found
    mask = X[:, feature] <= threshold
    left = _grow(X[mask], onehot[mask], depth + 1, params, mtry, rng)
    right = _grow(X[~mask], onehot[~mask], depth + 1, params, mtry, rng)
    return Split(
        feature=feature,
        threshold=threshold,
        left=left,
        right=right,
        class_counts=counts,
        impurity_decrease=impurity - score,
    )


def check_training_data(
    X: ArrayLike, labels: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.int64]]:
    Xa = np.asarray(X, dtype=np.float64)
    ya = np.asarray(labels, dtype=np.int64).ravel()
    if Xa.ndim != 2 or Xa.shape[0] == 0:
        raise ValueError(
            f"Training data must be a nonempty n x p matrix, got {Xa.shape}"
        )
    if ya.shape[0] != Xa.shape[0]:
        raise ValueError(f"{ya.shape[0]} labels for {Xa.shape[0]} rows")
    if np.any((ya < 0) | (ya >= N_CLASSES)):
        raise ValueError(f"Labels must be class codes 0..{N_CLASSES - 1}")
    return Xa, ya


def fit_tree(
    X: ArrayLike,
    labels: ArrayLike,
    params: TreeParams | None = None,
    rng: np.random.Generator | None = None,
) -> TreeNode:
    """Grow one tree on (X, labels).

    Args:
        X: n x p training matrix, n >= 1.
        labels: n class codes.
        params: Growth parameters (default: unlimited depth, all features).
        rng: Stream used to sample ``mtry`` features at each node.

    Returns:
        Root node.

    Raises:
        ValueError: Empty input or mismatched shapes.
    """
    Xa, ya = check_training_data(X, labels)
    params = params or TreeParams()
    p = Xa.shape[1]
    mtry = p if params.mtry is None else params.mtry
    if mtry > p:
        raise ValueError(f"mtry={mtry} exceeds the {p} available features")
    rng = rng if rng is not None else np.random.default_rng(0)
    return _grow(Xa, _one_hot(ya), 0, params, mtry, rng)


def _route(
    node: TreeNode,
    X: NDArray[np.float64],
    rows: NDArray[np.intp],
    out: NDArray[np.float64],
) -> None:
    if isinstance(node, Leaf):
        out[rows] = node.class_counts
        return
    go_left = X[rows, node.feature] <= node.threshold
    _route(node.left, X, rows[go_left], out)
    _route(node.right, X, rows[~go_left], out)


def leaf_counts(root: TreeNode, X: ArrayLike) -> NDArray[np.float64]:
    """Class counts of the leaf each row of *X* lands in (n x 4)."""
    Xa = np.atleast_2d(np.asarray(X, dtype=np.float64))
    out = np.zeros((Xa.shape[0], N_CLASSES))
    _route(root, Xa, np.arange(Xa.shape[0]), out)
    return out


def predict_tree(root: TreeNode, X: ArrayLike) -> NDArray[np.int64]:
    """Leaf majority class per row; ties go to the lowest class code."""
    return np.argmax(leaf_counts(root, X), axis=1).astype(np.int64)


def iter_splits(root: TreeNode) -> list[Split]:
    """All split nodes, depth first."""
    stack: list[TreeNode] = [root]
    splits: list[Split] = []
    while stack:
        node = stack.pop()
        if isinstance(node, Split):
            splits.append(node)
            stack.extend((node.right, node.left))
    return splits


def tree_depth(root: TreeNode) -> int:
    if isinstance(root, Leaf):
        return 0
    return 1 + max(tree_depth(root.left), tree_depth(root.right))


@dataclass(frozen=True)
class DecisionTreeModel:
    """Single-tree baseline over all features, grown without bootstrap."""

    root: TreeNode
    n_features: int
    params: TreeParams
    seed: int
    feature_names: tuple[str, ...] = ()

    def predict(self, X: ArrayLike) -> NDArray[np.int64]:
        return predict_tree(self.root, check_width(X, self.n_features))

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        counts = leaf_counts(self.root, check_width(X, self.n_features))
        return counts / counts.sum(axis=1, keepdims=True)


def check_width(X: ArrayLike, p: int) -> NDArray[np.float64]:
    Xa = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if Xa.shape[1] != p:
        raise ValueError(f"Model expects {p} features, got {Xa.shape[1]}")
    return Xa


def fit_decision_tree(
    X: ArrayLike,
    labels: ArrayLike,
    params: TreeParams | None = None,
    seed: int = 42,
    feature_names: tuple[str, ...] = (),
) -> DecisionTreeModel:
    """Fit the single-tree baseline."""
    params = params or TreeParams()
    Xa, ya = check_training_data(X, labels)
    root = fit_tree(Xa, ya, params, np.random.default_rng(seed))
    logger.info("Decision tree fitted: depth %d", tree_depth(root))
    return DecisionTreeModel(
        root=root,
        n_features=Xa.shape[1],
        params=params,
        seed=seed,
        feature_names=feature_names,
    )
