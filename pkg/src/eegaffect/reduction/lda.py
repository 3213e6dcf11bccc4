"""Linear discriminant analysis projection.

Directions solve Sb·v = λ·(Sw + ridge·I)·v, with the ridge set to
1e-8 · trace(Sw) / p so collinear feature sets stay solvable. The ridge
is small enough that appending a copy of an existing column leaves the
projections unchanged to well under 1e-6. At most #classes − 1 directions
carry between-class scatter; those with a non-negligible eigenvalue are kept.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import FeatureMatrix

logger = logging.getLogger(__name__)

RIDGE_SCALE: Final[float] = 1e-8
_RANK_TOL: Final[float] = 1e-10


@dataclass(frozen=True)
class LdaModel:
    """Projection directions (d x p) plus the projected class centroids (C x d).

    Rows of ``class_means`` follow ``classes``.
    """

    mean: NDArray[np.float64]
    directions: NDArray[np.float64]
    eigenvalues: NDArray[np.float64]
    classes: tuple[int, ...]
    class_means: NDArray[np.float64]

    @property
    def n_directions(self) -> int:
        return int(self.directions.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.mean.shape[0])


def _scatter(
    Xa: NDArray[np.float64], y: NDArray[np.int64], classes: NDArray[np.int64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    p = Xa.shape[1]
    grand = Xa.mean(axis=0)
    sw = np.zeros((p, p))
    sb = np.zeros((p, p))
    for c in classes:
        block = Xa[y == c]
        centre = block.mean(axis=0)
        centered = block - centre
        sw += centered.T @ centered
        diff = (centre - grand)[:, None]
        sb += block.shape[0] * (diff @ diff.T)
    return sw, sb


def lda_fit(X: ArrayLike, labels: ArrayLike) -> LdaModel:
    """Fit the LDA projection.

    Each direction is oriented so the projected centroid of the lowest class
    code is <= 0.

    Raises:
        ValueError: Fewer than two classes, or a class with fewer than two rows.
    """
    Xa = np.asarray(X, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64).ravel()
    if Xa.ndim != 2 or Xa.shape[0] != y.shape[0]:
        raise ValueError(f"lda_fit needs an n x p matrix and n labels, got {Xa.shape}")
    classes, sizes = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise ValueError("lda_fit needs at least two classes")
    small = classes[sizes < 2]
    if small.size:
        raise ValueError(f"Class(es) {small.tolist()} have fewer than 2 samples")
    p = Xa.shape[1]
    sw, sb = _scatter(Xa, y, classes)
    ridge = RIDGE_SCALE * float(np.trace(sw)) / p
    if ridge <= 0:
        ridge = RIDGE_SCALE
    eigenvalues, vectors = scipy.linalg.eigh(sb, sw + ridge * np.eye(p))
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = eigenvalues[order]
    vectors = vectors[:, order]
    top = float(eigenvalues[0]) if eigenvalues.size else 0.0
    informative = int(np.sum(eigenvalues > _RANK_TOL * top)) if top > 0 else 0
    d = min(classes.size - 1, informative, p)
    directions = vectors[:, :d].T

    mean = Xa.mean(axis=0)
    centroids = np.stack([(Xa[y == c] - mean).mean(axis=0) for c in classes])
    projected = centroids @ directions.T
    flip = np.where(projected[0] > 0, -1.0, 1.0)
    directions = directions * flip[:, None]
    projected = projected * flip[None, :]
    logger.info("LDA fitted: %d classes, p=%d, %d direction(s)", classes.size, p, d)
    return LdaModel(
        mean=mean,
        directions=directions,
        eigenvalues=eigenvalues[:d],
        classes=tuple(int(c) for c in classes),
        class_means=projected,
    )


def lda_transform(m: LdaModel, X: ArrayLike) -> NDArray[np.float64]:
    """Project (X − mean) onto the LDA directions, giving n x d scores."""
    Xa = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if Xa.shape[1] != m.n_features:
        raise ValueError(f"LDA fitted on {m.n_features} columns, got {Xa.shape[1]}")
    return np.asarray((Xa - m.mean) @ m.directions.T)


def lda_project(fm: FeatureMatrix) -> tuple[FeatureMatrix, LdaModel]:
    """Fit LDA on *fm* and return its ``ld:1…`` projection with the model."""
    model = lda_fit(fm.values, fm.labels)
    scores = lda_transform(model, fm.values)
    names = tuple(f"ld:{i + 1}" for i in range(model.n_directions))
    return fm.with_values(scores, names), model
