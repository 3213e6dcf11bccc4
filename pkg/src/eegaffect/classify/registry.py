"""Model kinds, the spec used to train one of them, and scaled bundles."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Final, Literal, Protocol, get_args

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.classify.forest import ForestModel, ForestParams, fit_forest
from eegaffect.classify.naive_bayes import NbModel, fit_nb
from eegaffect.classify.perceptron import (
    DEFAULT_EPOCHS,
    DEFAULT_PATIENCE,
    PerceptronModel,
    fit_perceptron,
)
from eegaffect.classify.tree import DecisionTreeModel, TreeParams, fit_decision_tree
from eegaffect.ingestion.preprocess import MinMaxScaler, apply_minmax

ModelKind = Literal["rf", "tree", "nb", "perceptron"]
MODEL_KINDS: Final[tuple[str, ...]] = get_args(ModelKind)

MODEL_TITLES: Final[dict[str, str]] = {
    "rf": "Random Forest Classifier",
    "tree": "Decision Tree Classifier",
    "nb": "Gaussian NB",
    "perceptron": "Perceptron",
}

Model = ForestModel | DecisionTreeModel | NbModel | PerceptronModel


class Classifier(Protocol):
    """What evaluation needs from a trained model."""

    @property
    def n_features(self) -> int: ...

    def predict(self, X: ArrayLike) -> NDArray[np.int64]: ...

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]: ...


def model_kind(model: Model) -> ModelKind:
    if isinstance(model, ForestModel):
        return "rf"
    if isinstance(model, DecisionTreeModel):
        return "tree"
    if isinstance(model, NbModel):
        return "nb"
    return "perceptron"


@dataclass(frozen=True)
class ModelSpec:
    """Everything needed to train a model of one kind reproducibly.

    ``seed`` is the master seed for every kind: the forest's tree streams,
    the single tree's feature sampling, and the perceptron's sample order.
    """

    kind: ModelKind = "rf"
    forest: ForestParams = field(default_factory=ForestParams)
    tree: TreeParams = field(default_factory=TreeParams)
    epochs: int = DEFAULT_EPOCHS
    learning_rate: float = 1.0
    patience: int = DEFAULT_PATIENCE
    seed: int = 42
    threads: int = 1

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise ValueError(
                f"Unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}"
            )
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")

    @property
    def title(self) -> str:
        return MODEL_TITLES[self.kind]

    def fit(
        self,
        X: ArrayLike,
        labels: ArrayLike,
        feature_names: tuple[str, ...] = (),
    ) -> Model:
        """Train a fresh model of ``kind`` on (X, labels)."""
        if self.kind == "rf":
            params = dataclasses.replace(self.forest, master_seed=self.seed)
            return fit_forest(
                X, labels, params, threads=self.threads, feature_names=feature_names
            )
        if self.kind == "tree":
            return fit_decision_tree(
                X, labels, self.tree, seed=self.seed, feature_names=feature_names
            )
        if self.kind == "nb":
            return fit_nb(X, labels)
        return fit_perceptron(
            X,
            labels,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            seed=self.seed,
            patience=self.patience,
        )


@dataclass(frozen=True)
class ScaledModel:
    """A trained model bundled with the min-max scaler fitted on its rows.

    ``predict`` and ``predict_proba`` take unscaled feature rows. A ``None``
    scaler means the model was trained on raw values.
    """

    model: Model
    scaler: MinMaxScaler | None = None

    def __post_init__(self) -> None:
        if (
            self.scaler is not None
            and self.scaler.n_features != self.model.n_features
        ):
            raise ValueError(
                f"Scaler has {self.scaler.n_features} columns but the model "
                f"expects {self.model.n_features}"
            )

    @property
    def n_features(self) -> int:
        return self.model.n_features

    def transform(self, X: ArrayLike) -> NDArray[np.float64]:
        arr = np.asarray(X, dtype=np.float64)
        if self.scaler is None:
            return arr
        return apply_minmax(self.scaler, arr)

    def predict(self, X: ArrayLike) -> NDArray[np.int64]:
        return self.model.predict(self.transform(X))

    def predict_proba(self, X: ArrayLike) -> NDArray[np.float64]:
        return self.model.predict_proba(self.transform(X))
