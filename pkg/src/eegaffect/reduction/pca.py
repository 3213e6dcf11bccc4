"""Principal component analysis by eigendecomposition of the covariance."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import FeatureMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PcaModel:
    """Column means, orthonormal components (r x p) and their eigenvalues.

    Eigenvalues are the sample (n − 1) variances along each component and
    are non-increasing.
    """

    mean: NDArray[np.float64]
    components: NDArray[np.float64]
    eigenvalues: NDArray[np.float64]

    @property
    def n_components(self) -> int:
        return int(self.components.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.mean.shape[0])


def _orient(components: NDArray[np.float64]) -> NDArray[np.float64]:
    # Largest-magnitude entry of each row positive; first one wins ties.
    lead = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(components.shape[0]), lead])
    signs[signs == 0] = 1.0
    return components * signs[:, None]


def pca_fit(X: ArrayLike) -> PcaModel:
    """Fit PCA, keeping r = min(n − 1, p) components.

    Raises:
        ValueError: Fewer than two rows.
    """
    Xa = np.asarray(X, dtype=np.float64)
    if Xa.ndim != 2 or Xa.shape[0] < 2:
        raise ValueError(f"pca_fit needs an n x p matrix with n >= 2, got {Xa.shape}")
    n, p = Xa.shape
    mean = Xa.mean(axis=0)
    centered = Xa - mean
    cov = centered.T @ centered / (n - 1)
    eigenvalues, vectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues)[::-1]
    r = min(n - 1, p)
    keep = order[:r]
    model = PcaModel(
        mean=mean,
        components=_orient(vectors[:, keep].T),
        eigenvalues=np.clip(eigenvalues[keep], 0.0, None),
    )
    logger.info("PCA fitted: n=%d, p=%d, %d components", n, p, r)
    return model


def _check_r(m: PcaModel, r: int | None) -> int:
    if r is None:
        return m.n_components
    if not 0 <= r <= m.n_components:
        raise ValueError(f"r must be in 0..{m.n_components}, got {r}")
    return r


def pca_transform(
    m: PcaModel, X: ArrayLike, r: int | None = None
) -> NDArray[np.float64]:
    """Scores (X − mean)·componentsᵀ on the first ``r`` components.

    Raises:
        ValueError: ``r`` larger than the fitted component count, or a column
            count different from the fitted one.
    """
    r = _check_r(m, r)
    Xa = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if Xa.shape[1] != m.n_features:
        raise ValueError(f"PCA fitted on {m.n_features} columns, got {Xa.shape[1]}")
    return np.asarray((Xa - m.mean) @ m.components[:r].T)


def pca_inverse(m: PcaModel, scores: ArrayLike) -> NDArray[np.float64]:
    """Map scores on the first r components back to feature space."""
    s = np.atleast_2d(np.asarray(scores, dtype=np.float64))
    r = _check_r(m, s.shape[1])
    return np.asarray(s @ m.components[:r] + m.mean)


def explained_variance(m: PcaModel, r: int) -> float:
    """Share of total variance on the first ``r`` components.

    All-zero eigenvalues (constant data) give 1.0.
    """
    r = _check_r(m, r)
    total = float(m.eigenvalues.sum())
    if total <= 0:
        return 1.0
    if r == m.n_components:
        return 1.0
    return min(1.0, float(m.eigenvalues[:r].sum()) / total)


def cumulative_explained_variance(m: PcaModel) -> NDArray[np.float64]:
    """explained_variance(m, r) for r = 1..n_components."""
    return np.array([explained_variance(m, r) for r in range(1, m.n_components + 1)])


def components_for_variance(m: PcaModel, fraction: float) -> int:
    """Smallest r whose explained variance reaches ``fraction``."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    curve = cumulative_explained_variance(m)
    hits = np.nonzero(curve >= fraction)[0]
    return int(hits[0]) + 1 if hits.size else m.n_components


def pca_project(
    fm: FeatureMatrix, r: int | None = None, variance: float | None = None
) -> tuple[FeatureMatrix, PcaModel]:
    """Fit PCA on *fm* and return its ``pc:1…`` scores with the model.

    ``r`` fixes the component count; otherwise ``variance`` picks the smallest
    count reaching that explained-variance share; otherwise all are kept.
    """
    model = pca_fit(fm.values)
    if r is None and variance is not None:
        r = components_for_variance(model, variance)
    scores = pca_transform(model, fm.values, r)
    names = tuple(f"pc:{i + 1}" for i in range(scores.shape[1]))
    logger.info(
        "PCA kept %d component(s), explained variance %.4f",
        scores.shape[1],
        explained_variance(model, scores.shape[1]),
    )
    return fm.with_values(scores, names), model
