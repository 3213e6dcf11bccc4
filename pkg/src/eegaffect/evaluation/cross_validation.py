"""Holdout and k-fold evaluation of a model spec.

Min-max scaling is part of the protocol: ``train-fit`` fits the scaler on
the training rows of each split only, ``global`` fits it once on all rows,
``none`` leaves features unscaled.
"""

from __future__ import annotations

import logging
from typing import Final, Literal, get_args

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.classify.registry import ModelSpec, ScaledModel
from eegaffect.data.models import N_CLASSES
from eegaffect.evaluation.metrics import accuracy, confusion_matrix
from eegaffect.evaluation.report import EvalReport, build_report
from eegaffect.evaluation.splits import Fold, holdout_split
from eegaffect.ingestion.preprocess import MinMaxScaler, apply_minmax, fit_minmax

logger = logging.getLogger(__name__)

Normalize = Literal["train-fit", "global", "none"]
NORMALIZE_MODES: Final[tuple[str, ...]] = get_args(Normalize)


def _check_normalize(normalize: str) -> None:
    if normalize not in NORMALIZE_MODES:
        raise ValueError(
            f"normalize must be one of {NORMALIZE_MODES}, got {normalize!r}"
        )


def fit_scaler(
    X: NDArray[np.float64], train: Fold, normalize: Normalize | str
) -> MinMaxScaler | None:
    """Fit the scaler ``normalize`` asks for; ``None`` means no scaling."""
    _check_normalize(normalize)
    if normalize == "none":
        return None
    return fit_minmax(X[train] if normalize == "train-fit" else X)


def scale_split(
    X: NDArray[np.float64],
    train: Fold,
    test: Fold,
    normalize: Normalize | str,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return (X[train], X[test]) scaled according to ``normalize``."""
    scaler = fit_scaler(X, train, normalize)
    if scaler is None:
        return X[train], X[test]
    return apply_minmax(scaler, X[train]), apply_minmax(scaler, X[test])


def _fit_and_score(
    spec: ModelSpec,
    X: NDArray[np.float64],
    y: NDArray[np.int64],
    train: Fold,
    test: Fold,
    normalize: str,
    feature_names: tuple[str, ...],
) -> tuple[ScaledModel, NDArray[np.int64], NDArray[np.float64], float]:
    scaler = fit_scaler(X, train, normalize)
    model = ScaledModel(
        model=spec.fit(
            X[train] if scaler is None else apply_minmax(scaler, X[train]),
            y[train],
            feature_names=feature_names,
        ),
        scaler=scaler,
    )
    train_acc = accuracy(confusion_matrix(y[train], model.predict(X[train])))
    return model, model.predict(X[test]), model.predict_proba(X[test]), train_acc


def _as_arrays(
    X: ArrayLike, labels: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.int64]]:
    Xa = np.asarray(X, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64).ravel()
    if Xa.ndim != 2 or Xa.shape[0] != y.shape[0]:
        raise ValueError(
            f"Need an n x p matrix and n labels, got {Xa.shape}, {y.shape}"
        )
    return Xa, y


def holdout_evaluate(
    spec: ModelSpec,
    X: ArrayLike,
    labels: ArrayLike,
    ratio: float = 0.7,
    seed: int = 42,
    stratified: bool = True,
    normalize: Normalize | str = "train-fit",
    feature_names: tuple[str, ...] = (),
) -> tuple[EvalReport, ScaledModel]:
    """Train on a holdout split and report test metrics plus train accuracy.

    Returns:
        (report, model trained on the training rows, bundled with its scaler).
    """
    Xa, y = _as_arrays(X, labels)
    train, test = holdout_split(y.size, ratio, y, seed, stratified)
    model, pred, scores, train_acc = _fit_and_score(
        spec, Xa, y, train, test, normalize, feature_names
    )
    kind = "stratified " if stratified else ""
    protocol = f"{kind}holdout {ratio:.2f}/{1 - ratio:.2f}, seed {seed}"
    report = build_report(y[test], pred, scores, spec.kind, protocol, train_acc)
    logger.info(
        "%s holdout: train %.4f, test %.4f", spec.kind, train_acc, report.accuracy
    )
    return report, model


def cross_validate(
    spec: ModelSpec,
    X: ArrayLike,
    labels: ArrayLike,
    folds: list[Fold],
    normalize: Normalize | str = "train-fit",
    protocol: str = "k-fold",
    feature_names: tuple[str, ...] = (),
) -> EvalReport:
    """Train on k−1 folds, test on the held-out one, for every fold.

    The returned report pools the out-of-fold predictions of all folds, so
    its confusion matrix is the sum of the per-fold matrices; the per-fold
    reports are in ``folds``. Train accuracy is the mean over folds.

    Raises:
        ValueError: Folds that do not partition 0..n−1, or errors from training.
    """
    Xa, y = _as_arrays(X, labels)
    n = y.size
    if len(folds) < 2 or not np.array_equal(
        np.sort(np.concatenate(folds)), np.arange(n)
    ):
        raise ValueError("Folds must partition 0..n-1 into at least two parts")

    pred = np.empty(n, dtype=np.int64)
    scores = np.empty((n, N_CLASSES))
    fold_reports: list[EvalReport] = []
    train_accs: list[float] = []
    everything = np.arange(n)
    for i, test in enumerate(folds):
        train = np.setdiff1d(everything, test)
        _, fold_pred, fold_scores, train_acc = _fit_and_score(
            spec, Xa, y, train, test, normalize, feature_names
        )
        pred[test] = fold_pred
        scores[test] = fold_scores
        train_accs.append(train_acc)
        fold_reports.append(
            build_report(
                y[test],
                fold_pred,
                fold_scores,
                spec.kind,
                f"{protocol} fold {i + 1}/{len(folds)}",
                train_acc,
            )
        )
        logger.debug(
            "Fold %d/%d: test %.4f", i + 1, len(folds), fold_reports[-1].accuracy
        )

    report = build_report(
        y,
        pred,
        scores,
        spec.kind,
        f"{protocol} ({len(folds)} folds, pooled)",
        float(np.mean(train_accs)),
        tuple(fold_reports),
    )
    logger.info("%s %s: pooled accuracy %.4f", spec.kind, protocol, report.accuracy)
    return report


def fit_scaled(
    spec: ModelSpec,
    X: ArrayLike,
    labels: ArrayLike,
    normalize: Normalize | str = "train-fit",
    feature_names: tuple[str, ...] = (),
) -> ScaledModel:
    """Train on every row; ``train-fit`` and ``global`` both scale on all rows."""
    Xa, y = _as_arrays(X, labels)
    everything = np.arange(y.size)
    scaler = fit_scaler(Xa, everything, normalize)
    fitted = spec.fit(
        Xa if scaler is None else apply_minmax(scaler, Xa),
        y,
        feature_names=feature_names,
    )
    return ScaledModel(model=fitted, scaler=scaler)
