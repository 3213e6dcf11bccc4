"""Gaussian naive Bayes scored in log space."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
import scipy.special
from numpy.typing import ArrayLike, NDArray

from eegaffect.classify.tree import check_training_data, check_width
from eegaffect.data.models import N_CLASSES

logger = logging.getLogger(__name__)

VAR_SMOOTHING: Final[float] = 1e-9


@dataclass(frozen=True)
class NbModel:
    """Per-class priors, feature means and smoothed variances.

    Rows of ``means``/``variances`` follow ``classes``.
    """

    classes: tuple[int, ...]
    priors: NDArray[np.float64]
    means: NDArray[np.float64]
    variances: NDArray[np.float64]

    @property
    def n_features(self) -> int:
        return int(self.means.shape[1])

    def joint_log_likelihood(self, X: ArrayLike) -> NDArray[np.float64]:
        """log P(c) + Σ_j log N(x_j; µ_cj, σ²_cj), shape (n, len(classes))."""
        Xa = check_width(X, self.n_features)
        diff = Xa[:, None, :] - self.means[None, :, :]
        log_density = -0.5 * (
            np.log(2.0 * np.pi * self.variances)[None, :, :]
            + diff**2 / self.variances[None, :, :]
        )
        return np.log(self.priors)[None, :] + log_density.sum(axis=2)

    def predict_log_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        """Log posteriors over all four classes; absent classes get -inf."""
        jll = self.joint_log_likelihood(X)
        out = np.full((jll.shape[0], N_CLASSES), -np.inf)
        out[:, list(self.classes)] = jll - scipy.special.logsumexp(
            jll, axis=1, keepdims=True
        )
        return out

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        return np.exp(self.predict_log_proba(X))

    def predict(self, X: ArrayLike) -> NDArray[np.int64]:
        """Argmax posterior; ties go to the lowest class code."""
        jll = self.joint_log_likelihood(X)
        return np.asarray(self.classes, dtype=np.int64)[np.argmax(jll, axis=1)]


def fit_nb(
    X: ArrayLike, labels: ArrayLike, classes: tuple[int, ...] | None = None
) -> NbModel:
    """Fit Gaussian naive Bayes.

    Args:
        X: n x p training matrix.
        labels: n class codes.
        classes: Classes the model must cover, default all four. Each one
            needs at least one training row.

    Returns:
        NbModel with variances smoothed by 1e-9 × the largest column variance.

    Raises:
        ValueError: A required class has no training row.
    """
    Xa, ya = check_training_data(X, labels)
    wanted = tuple(range(N_CLASSES)) if classes is None else tuple(sorted(classes))
    missing = [c for c in wanted if not np.any(ya == c)]
    if missing:
        raise ValueError(f"Class(es) {missing} absent from the training data")
    smoothing = VAR_SMOOTHING * float(np.max(Xa.var(axis=0)))
    means = np.stack([Xa[ya == c].mean(axis=0) for c in wanted])
    variances = np.stack([Xa[ya == c].var(axis=0) for c in wanted]) + smoothing
    if np.any(variances <= 0):
        # Every column constant: fall back to unit variance.
        variances = np.where(variances > 0, variances, 1.0)
    priors = np.array([np.mean(ya == c) for c in wanted])
    priors = priors / priors.sum()
    logger.info("Gaussian NB fitted: %d classes, p=%d", len(wanted), Xa.shape[1])
    return NbModel(classes=wanted, priors=priors, means=means, variances=variances)
