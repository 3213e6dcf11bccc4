"""One-vs-rest perceptron.

Four binary perceptrons (class c against the rest, targets ±1) see the
samples in the same seeded order each epoch. A sample is a mistake for
perceptron c when y·(w·x + b) <= 0, and triggers w += lr·y·x, b += lr·y.
A perceptron stops updating after its first mistake-free epoch. Training
ends when all four have stopped, when the epoch budget is spent, or when
the epoch's total mistake count has not beaten its best for ``patience``
epochs in a row.
"""

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

DEFAULT_EPOCHS: Final[int] = 10_000
DEFAULT_PATIENCE: Final[int] = 200


@dataclass(frozen=True)
class PerceptronModel:
    """Weights (4 x p) and biases (4) of the one-vs-rest perceptrons."""

    weights: NDArray[np.float64]
    biases: NDArray[np.float64]
    epochs_trained: int
    converged: tuple[bool, ...]
    learning_rate: float = 1.0
    seed: int = 42
    patience: int = DEFAULT_PATIENCE

    @property
    def n_features(self) -> int:
        return int(self.weights.shape[1])

    def decision_function(self, X: ArrayLike) -> NDArray[np.float64]:
        Xa = check_width(X, self.n_features)
        return np.asarray(Xa @ self.weights.T + self.biases)

    def predict(self, X: ArrayLike) -> NDArray[np.int64]:
        """Argmax activation; ties go to the lowest class code."""
        return np.argmax(self.decision_function(X), axis=1).astype(np.int64)

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        """Softmax of the activations, used as ROC scores."""
        return np.asarray(scipy.special.softmax(self.decision_function(X), axis=1))


def fit_perceptron(
    X: ArrayLike,
    labels: ArrayLike,
    epochs: int = DEFAULT_EPOCHS,
    learning_rate: float = 1.0,
    seed: int = 42,
    patience: int = DEFAULT_PATIENCE,
) -> PerceptronModel:
    """Train the one-vs-rest perceptrons.

    Args:
        X: n x p training matrix.
        labels: n class codes.
        epochs: Epoch budget.
        learning_rate: Update step.
        seed: Seed for the per-epoch sample order.
        patience: Epochs without a new lowest mistake count before stopping.

    Returns:
        PerceptronModel; ``epochs_trained`` is the number of epochs run.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if not learning_rate > 0:
        raise ValueError(f"learning_rate must be > 0, got {learning_rate}")
    if patience < 1:
        raise ValueError(f"patience must be >= 1, got {patience}")
    Xa, ya = check_training_data(X, labels)
    n, p = Xa.shape
    targets = np.where(ya[:, None] == np.arange(N_CLASSES)[None, :], 1.0, -1.0)
    weights = np.zeros((N_CLASSES, p))
    biases = np.zeros(N_CLASSES)
    active = np.ones(N_CLASSES, dtype=bool)
    rng = np.random.default_rng(seed)

    best = n * N_CLASSES + 1
    stale = 0
    epoch = 0
    while epoch < epochs and active.any() and stale < patience:
        epoch += 1
        mistakes = np.zeros(N_CLASSES, dtype=bool)
        errors = 0
        for i in rng.permutation(n):
            y = targets[i]
            wrong = active & (y * (weights @ Xa[i] + biases) <= 0)
            if wrong.any():
                step = learning_rate * y * wrong
                weights += step[:, None] * Xa[i][None, :]
                biases += step
                mistakes |= wrong
                errors += int(wrong.sum())
        active &= mistakes
        if errors < best:
            best, stale = errors, 0
        else:
            stale += 1

    converged = tuple(bool(v) for v in ~active)
    if stale >= patience and active.any():
        logger.info("Perceptron stopped early after %d stale epoch(s)", stale)
    logger.info(
        "Perceptron fitted: %d epoch(s), converged per class %s", epoch, converged
    )
    return PerceptronModel(
        weights=weights,
        biases=biases,
        epochs_trained=epoch,
        converged=converged,
        learning_rate=learning_rate,
        seed=seed,
        patience=patience,
    )
