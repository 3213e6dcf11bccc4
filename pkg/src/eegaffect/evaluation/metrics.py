"""Confusion-matrix metrics and one-vs-rest ROC curves.

Precision and recall with a zero denominator are 0, as is F1 when P + R = 0;
each such case is reported as a warning string instead of raised. Macro
averages run over the classes present in the truth or the predictions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final, Literal, NamedTuple, get_args

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import N_CLASSES, AffectLabel

logger = logging.getLogger(__name__)

Averaging = Literal["macro", "micro", "weighted"]
AVERAGINGS: Final[tuple[str, ...]] = get_args(Averaging)


def confusion_matrix(true: ArrayLike, pred: ArrayLike) -> NDArray[np.int64]:
    """4 x 4 counts, rows = true class, columns = predicted class.

    Raises:
        ValueError: Length mismatch or a code outside 0..3.
    """
    t = np.asarray(true, dtype=np.int64).ravel()
    p = np.asarray(pred, dtype=np.int64).ravel()
    if t.shape != p.shape:
        raise ValueError(f"Length mismatch: {t.size} true vs {p.size} predicted")
    for name, codes in (("true", t), ("predicted", p)):
        if np.any((codes < 0) | (codes >= N_CLASSES)):
            raise ValueError(f"{name} labels must be class codes 0..{N_CLASSES - 1}")
    counts = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    np.add.at(counts, (t, p), 1)
    return counts


def accuracy(confusion: ArrayLike) -> float:
    """trace / n; 0 for an empty matrix."""
    c = np.asarray(confusion)
    total = int(c.sum())
    return float(np.trace(c)) / total if total else 0.0


class PerClass(NamedTuple):
    precision: NDArray[np.float64]
    recall: NDArray[np.float64]
    f1: NDArray[np.float64]
    support: NDArray[np.int64]
    warnings: tuple[str, ...]


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def per_class_prf(confusion: ArrayLike) -> PerClass:
    """Per-class precision, recall and F1 with the zero-division convention."""
    c = np.asarray(confusion, dtype=np.int64)
    tp = np.diag(c)
    predicted = c.sum(axis=0)
    support = c.sum(axis=1)
    precision = np.zeros(N_CLASSES)
    recall = np.zeros(N_CLASSES)
    f1 = np.zeros(N_CLASSES)
    warnings: list[str] = []
    for k in range(N_CLASSES):
        if support[k] == 0 and predicted[k] == 0:
            continue
        slug = AffectLabel(k).slug
        if predicted[k] == 0:
            warnings.append(f"precision of {slug} set to 0 (no predicted samples)")
        if support[k] == 0:
            warnings.append(f"recall of {slug} set to 0 (no true samples)")
        precision[k] = _ratio(int(tp[k]), int(predicted[k]))
        recall[k] = _ratio(int(tp[k]), int(support[k]))
        if precision[k] + recall[k] > 0:
            f1[k] = 2 * precision[k] * recall[k] / (precision[k] + recall[k])
        else:
            warnings.append(f"F1 of {slug} set to 0 (precision + recall = 0)")
    return PerClass(precision, recall, f1, support, tuple(warnings))


class Prf(NamedTuple):
    precision: float
    recall: float
    f1: float


def prf(confusion: ArrayLike, averaging: Averaging | str = "macro") -> Prf:
    """Averaged precision, recall and F1.

    - macro: unweighted mean over classes present in truth or prediction
    - weighted: mean weighted by true-class support
    - micro: pooled counts; precision = recall = F1 = accuracy
    """
    if averaging not in AVERAGINGS:
        raise ValueError(f"averaging must be one of {AVERAGINGS}, got {averaging!r}")
    c = np.asarray(confusion, dtype=np.int64)
    if averaging == "micro":
        acc = accuracy(c)
        return Prf(acc, acc, acc)
    scores = per_class_prf(c)
    if averaging == "macro":
        present = (c.sum(axis=0) + c.sum(axis=1)) > 0
        if not present.any():
            return Prf(0.0, 0.0, 0.0)
        return Prf(
            float(scores.precision[present].mean()),
            float(scores.recall[present].mean()),
            float(scores.f1[present].mean()),
        )
    total = int(scores.support.sum())
    if total == 0:
        return Prf(0.0, 0.0, 0.0)
    w = scores.support / total
    return Prf(
        float(np.sum(w * scores.precision)),
        float(np.sum(w * scores.recall)),
        float(np.sum(w * scores.f1)),
    )


# ---------------------------------------------------------------------------
# ROC
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RocCurve:
    """ROC points from (0, 0) to (1, 1); ``thresholds[0]`` is +inf.

    Point i classifies ``score >= thresholds[i]`` as positive.
    """

    fpr: NDArray[np.float64]
    tpr: NDArray[np.float64]
    thresholds: NDArray[np.float64]


def roc_curve(scores: ArrayLike, positives: ArrayLike) -> RocCurve:
    """One ROC step per distinct score, highest first.

    Samples with equal scores enter together, so a tie between a positive
    and a negative is a diagonal segment.

    Raises:
        ValueError: Length mismatch, or no positive or no negative sample.
    """
    s = np.asarray(scores, dtype=np.float64).ravel()
    pos = np.asarray(positives).ravel().astype(bool)
    if s.shape != pos.shape:
        raise ValueError(f"Length mismatch: {s.size} scores vs {pos.size} flags")
    n_pos = int(pos.sum())
    n_neg = int(pos.size - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC needs at least one positive and one negative sample")
    order = np.argsort(-s, kind="stable")
    s = s[order]
    pos = pos[order]
    # Last index of each run of equal scores.
    ends = np.r_[np.flatnonzero(np.diff(s)), s.size - 1]
    tps = np.cumsum(pos)[ends]
    fps = (ends + 1) - tps
    return RocCurve(
        fpr=np.r_[0.0, fps / n_neg],
        tpr=np.r_[0.0, tps / n_pos],
        thresholds=np.r_[np.inf, s[ends]],
    )


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the ROC points."""
    return float(np.trapezoid(curve.tpr, curve.fpr))
