"""Minimum-redundancy maximum-relevance feature selection.

Relevance of a column is its one-way ANOVA F statistic against the class
labels; redundancy of a candidate is its mean absolute Pearson correlation
with the columns already chosen. Selection is greedy: the first pick is the
most relevant column, then each step takes the candidate maximizing

- MID: F − mean|r|
- MIQ: F / (mean|r| + ε)

Ties go to the lowest column index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

# F reported for columns whose classes are perfectly separated (zero
# within-group spread, nonzero between-group spread).
ANOVA_SENTINEL: Final[float] = 1e12
MIQ_EPSILON: Final[float] = 1e-12
_REL_TOL: Final[float] = 1e-12


class Criterion(StrEnum):
    MID = "mid"
    MIQ = "miq"
    GINI_IMPORTANCE = "gini"


@dataclass(frozen=True)
class SelectionResult:
    """Chosen column indices in pick order with the per-step scores.

    ``scores[i]`` is the objective value that won step ``i``; ``relevance``
    and ``redundancy`` are its two ingredients (redundancy is 0 at the first
    step and for importance ranking).
    """

    chosen: tuple[int, ...]
    scores: tuple[float, ...]
    relevance: tuple[float, ...]
    redundancy: tuple[float, ...]
    criterion: Criterion

    def __post_init__(self) -> None:
        if len(set(self.chosen)) != len(self.chosen):
            raise ValueError(f"Duplicate column in selection {self.chosen}")

    @property
    def k(self) -> int:
        return len(self.chosen)


def _groups(labels: ArrayLike, n: int) -> list[NDArray[np.bool_]]:
    y = np.asarray(labels).ravel()
    if y.shape[0] != n:
        raise ValueError(f"{y.shape[0]} labels for {n} rows")
    classes = np.unique(y)
    if classes.size < 2:
        raise ValueError("ANOVA F needs at least two classes present")
    if n < classes.size + 1:
        raise ValueError(
            f"ANOVA F needs n >= #classes + 1, got n={n} for {classes.size} classes"
        )
    return [y == c for c in classes]


def anova_f_columns(X: ArrayLike, labels: ArrayLike) -> NDArray[np.float64]:
    """One-way ANOVA F of every column of an n x p matrix."""
    Xa = np.asarray(X, dtype=np.float64)
    if Xa.ndim != 2:
        raise ValueError(f"Expected an n x p matrix, got shape {Xa.shape}")
    n = Xa.shape[0]
    groups = _groups(labels, n)
    g = len(groups)
    grand = Xa.mean(axis=0)
    ssb = np.zeros(Xa.shape[1])
    ssw = np.zeros(Xa.shape[1])
    for mask in groups:
        block = Xa[mask]
        centre = block.mean(axis=0)
        ssb += block.shape[0] * (centre - grand) ** 2
        ssw += np.sum((block - centre) ** 2, axis=0)
    f = np.zeros(Xa.shape[1])
    constant = np.ptp(Xa, axis=0) == 0
    separated = ~constant & (ssw <= _REL_TOL * (ssb + ssw))
    regular = ~constant & ~separated
    f[separated] = ANOVA_SENTINEL
    f[regular] = (ssb[regular] / (g - 1)) / (ssw[regular] / (n - g))
    return f


def anova_f(col: ArrayLike, labels: ArrayLike) -> float:
    """One-way ANOVA F = between-group mean square / within-group mean square.

    Returns 0 for a constant column and :data:`ANOVA_SENTINEL` when the
    within-group spread is zero but the groups differ.

    Raises:
        ValueError: Fewer than two classes, or n < #classes + 1.
    """
    arr = np.asarray(col, dtype=np.float64).ravel()
    return float(anova_f_columns(arr[:, None], labels)[0])


def pearson(x: ArrayLike, y: ArrayLike) -> float:
    """Pearson correlation in [−1, 1]; 0 when either vector is constant."""
    xa = np.asarray(x, dtype=np.float64).ravel()
    ya = np.asarray(y, dtype=np.float64).ravel()
    if xa.shape != ya.shape or xa.size < 2:
        raise ValueError(
            f"pearson needs two vectors of equal length >= 2, got {xa.size}, {ya.size}"
        )
    if np.ptp(xa) == 0 or np.ptp(ya) == 0:
        return 0.0
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    r = np.sum(dx * dy) / np.sqrt(np.sum(dx * dx) * np.sum(dy * dy))
    return float(np.clip(r, -1.0, 1.0))


def mrmr(
    X: ArrayLike,
    labels: ArrayLike,
    k: int,
    criterion: Criterion | str = Criterion.MID,
) -> SelectionResult:
    """Greedy mRMR selection of ``k`` columns.

    Args:
        X: n x p feature matrix.
        labels: n class codes (at least two classes).
        k: Number of columns to choose, 1 <= k <= p.
        criterion: ``MID`` or ``MIQ``.

    Returns:
        SelectionResult in pick order.

    Raises:
        ValueError: k out of range or an unsupported criterion.
    """
    criterion = Criterion(criterion)
    if criterion is Criterion.GINI_IMPORTANCE:
        raise ValueError("mrmr supports the MID and MIQ criteria only")
    Xa = np.asarray(X, dtype=np.float64)
    p = Xa.shape[1] if Xa.ndim == 2 else 0
    if not 1 <= k <= p:
        raise ValueError(f"k must be in 1..{p}, got {k}")
    relevance = anova_f_columns(Xa, labels)

    chosen: list[int] = []
    scores: list[float] = []
    redundancies: list[float] = []
    # Row i holds |r| between the i-th chosen column and every column.
    abs_r = np.zeros((k, p))
    for step in range(k):
        if step == 0:
            redundancy = np.zeros(p)
            objective = relevance.copy()
        else:
            redundancy = np.mean(abs_r[:step], axis=0)
            if criterion is Criterion.MID:
                objective = relevance - redundancy
            else:
                objective = relevance / (redundancy + MIQ_EPSILON)
        objective[chosen] = -np.inf
        pick = int(np.argmax(objective))
        chosen.append(pick)
        scores.append(float(objective[pick]))
        redundancies.append(float(redundancy[pick]))
        abs_r[step] = [abs(pearson(Xa[:, pick], Xa[:, j])) for j in range(p)]
        logger.debug("mRMR step %d: column %d score %g", step, pick, objective[pick])

    logger.info("mRMR-%s selected %d of %d columns", criterion.name, k, p)
    return SelectionResult(
        chosen=tuple(chosen),
        scores=tuple(scores),
        relevance=tuple(float(relevance[j]) for j in chosen),
        redundancy=tuple(redundancies),
        criterion=criterion,
    )
