"""Holdout and k-fold index splits.

Every split is a pure function of its arguments and seed; index arrays are
returned sorted ascending.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

Fold = NDArray[np.intp]


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _stratified_train_counts(sizes: NDArray[np.intp], ratio: float) -> list[int]:
    """Largest-remainder apportionment of round(ratio·n) over the classes."""
    exact = ratio * sizes
    counts = np.floor(exact).astype(np.intp)
    short = _round_half_up(ratio * int(sizes.sum())) - int(counts.sum())
    # Largest fractional part first; the lower class code wins ties.
    order = np.argsort(-(exact - counts), kind="stable")
    for i in order[: max(short, 0)]:
        counts[i] += 1
    return [int(c) for c in counts]


def holdout_split(
    n: int,
    ratio: float = 0.7,
    labels: ArrayLike | None = None,
    seed: int = 42,
    stratified: bool = False,
) -> tuple[Fold, Fold]:
    """Split 0..n−1 into train and test indices.

    Args:
        n: Number of samples, >= 2.
        ratio: Train share, 0 < ratio < 1.
        labels: n class codes; required when ``stratified``.
        seed: Shuffle seed.
        stratified: Keep per-class proportions.

    Returns:
        (train, test), disjoint and together covering 0..n−1.

    Raises:
        ValueError: Bad ratio or n, or a side (or, stratified, a class on a
            side) left without samples.
    """
    if not 0 < ratio < 1:
        raise ValueError(f"ratio must be in (0, 1), got {ratio}")
    if n < 2:
        raise ValueError(f"holdout_split needs n >= 2, got {n}")
    rng = np.random.default_rng(seed)

    if not stratified:
        n_train = _round_half_up(ratio * n)
        if not 0 < n_train < n:
            raise ValueError(f"ratio {ratio} leaves an empty side for n={n}")
        perm = rng.permutation(n)
        return np.sort(perm[:n_train]), np.sort(perm[n_train:])

    if labels is None:
        raise ValueError("Stratified holdout needs labels")
    y = np.asarray(labels).ravel()
    if y.shape[0] != n:
        raise ValueError(f"{y.shape[0]} labels for n={n}")
    classes, sizes = np.unique(y, return_counts=True)
    train_counts = _stratified_train_counts(sizes, ratio)
    train: list[int] = []
    test: list[int] = []
    for c, size, n_train in zip(classes, sizes, train_counts, strict=True):
        if n_train == 0 or n_train == size:
            side = "train" if n_train == 0 else "test"
            raise ValueError(
                f"Stratified split leaves class {c} with no {side} samples "
                f"({size} sample(s), ratio {ratio})"
            )
        members = rng.permutation(np.flatnonzero(y == c))
        train.extend(members[:n_train])
        test.extend(members[n_train:])
    return np.sort(np.asarray(train, dtype=np.intp)), np.sort(
        np.asarray(test, dtype=np.intp)
    )


def kfold_indices(n: int, k: int, seed: int = 42) -> list[Fold]:
    """Shuffle 0..n−1 and cut it into k folds whose sizes differ by at most 1."""
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}, got {k}")
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(fold) for fold in np.array_split(perm, k)]


def stratified_kfold(labels: ArrayLike, k: int, seed: int = 42) -> list[Fold]:
    """k folds keeping per-class counts within 1 of each other.

    Each class's shuffled members are dealt round-robin to the folds; the
    next class continues from the fold where the previous one stopped, so
    total fold sizes also differ by at most 1.

    Raises:
        ValueError: k < 2 or k larger than the smallest class.
    """
    y = np.asarray(labels).ravel()
    classes, sizes = np.unique(y, return_counts=True)
    if classes.size == 0:
        raise ValueError("stratified_kfold needs at least one label")
    smallest = int(sizes.min())
    if not 2 <= k <= smallest:
        raise ValueError(
            f"k must be in 2..{smallest} (smallest class size), got {k}"
        )
    rng = np.random.default_rng(seed)
    buckets: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for c in classes:
        members = rng.permutation(np.flatnonzero(y == c))
        for i, idx in enumerate(members):
            buckets[(offset + i) % k].append(int(idx))
        offset = (offset + members.size) % k
    logger.debug("Stratified %d-fold sizes: %s", k, [len(b) for b in buckets])
    return [np.sort(np.asarray(b, dtype=np.intp)) for b in buckets]
