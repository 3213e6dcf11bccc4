"""Evaluation reports: construction, JSON documents and accuracy tables."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Final

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import LABELS, N_CLASSES
from eegaffect.evaluation.metrics import (
    AVERAGINGS,
    RocCurve,
    accuracy,
    auc,
    confusion_matrix,
    per_class_prf,
    prf,
    roc_curve,
)

logger = logging.getLogger(__name__)

REPORT_FORMAT: Final[str] = "eegaffect-report"
REPORT_VERSION: Final[int] = 1


@dataclass(frozen=True, eq=False)
class EvalReport:
    """Metrics of one evaluation (a holdout split, a fold, or pooled folds).

    ``roc`` and ``auc`` are keyed by class slug and hold only the classes
    with both positive and negative test samples.
    """

    model: str
    protocol: str
    confusion: NDArray[np.int64]
    accuracy: float
    precision: dict[str, float]
    recall: dict[str, float]
    f1: dict[str, float]
    roc: dict[str, RocCurve]
    auc: dict[str, float]
    warnings: tuple[str, ...] = ()
    train_accuracy: float | None = None
    folds: tuple[EvalReport, ...] = field(default=())

    @property
    def n(self) -> int:
        return int(self.confusion.sum())


def build_report(
    true: ArrayLike,
    pred: ArrayLike,
    scores: ArrayLike,
    model: str,
    protocol: str,
    train_accuracy: float | None = None,
    folds: tuple[EvalReport, ...] = (),
) -> EvalReport:
    """Compute every metric of an EvalReport from predictions and class scores.

    Args:
        true: n true class codes.
        pred: n predicted class codes.
        scores: n x 4 class scores (vote fractions or probabilities).
        model: Model kind.
        protocol: Human-readable description of the split.
        train_accuracy: Accuracy on the training rows, if known.
        folds: Per-fold reports when this one pools them.
    """
    t = np.asarray(true, dtype=np.int64).ravel()
    s = np.asarray(scores, dtype=np.float64)
    if s.shape != (t.size, N_CLASSES):
        raise ValueError(f"scores must be {t.size} x {N_CLASSES}, got {s.shape}")
    confusion = confusion_matrix(t, pred)
    warnings = list(per_class_prf(confusion).warnings)
    averaged = {a: prf(confusion, a) for a in AVERAGINGS}

    rocs: dict[str, RocCurve] = {}
    aucs: dict[str, float] = {}
    for label in LABELS:
        positives = t == int(label)
        if positives.all() or not positives.any():
            warnings.append(f"ROC of {label.slug} skipped (class absent or alone)")
            continue
        curve = roc_curve(s[:, int(label)], positives)
        rocs[label.slug] = curve
        aucs[label.slug] = auc(curve)
    for message in warnings:
        logger.warning("%s: %s", protocol, message)

    return EvalReport(
        model=model,
        protocol=protocol,
        confusion=confusion,
        accuracy=accuracy(confusion),
        precision={a: v.precision for a, v in averaged.items()},
        recall={a: v.recall for a, v in averaged.items()},
        f1={a: v.f1 for a, v in averaged.items()},
        roc=rocs,
        auc=aucs,
        warnings=tuple(warnings),
        train_accuracy=train_accuracy,
        folds=folds,
    )


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------


def _finite_or_none(x: float) -> float | None:
    return None if np.isinf(x) else float(x)


def report_to_dict(report: EvalReport) -> dict[str, Any]:
    """JSON-ready document; the +inf ROC sentinel threshold is written as null."""
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "model": report.model,
        "protocol": report.protocol,
        "n": report.n,
        "confusion": report.confusion.tolist(),
        "accuracy": report.accuracy,
        "train_accuracy": report.train_accuracy,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "roc": {
            slug: {
                "fpr": curve.fpr.tolist(),
                "tpr": curve.tpr.tolist(),
                "thresholds": [_finite_or_none(x) for x in curve.thresholds],
            }
            for slug, curve in report.roc.items()
        },
        "auc": report.auc,
        "warnings": list(report.warnings),
        "folds": [report_to_dict(fold) for fold in report.folds],
    }


def report_from_dict(doc: dict[str, Any]) -> EvalReport:
    """Rebuild an EvalReport from :func:`report_to_dict` output.

    Raises:
        ValueError: Not a report document or a required key is missing.
    """
    if doc.get("format") != REPORT_FORMAT:
        raise ValueError(f"Not a report document: format={doc.get('format')!r}")
    try:
        return EvalReport(
            model=str(doc["model"]),
            protocol=str(doc["protocol"]),
            confusion=np.asarray(doc["confusion"], dtype=np.int64),
            accuracy=float(doc["accuracy"]),
            precision={k: float(v) for k, v in doc["precision"].items()},
            recall={k: float(v) for k, v in doc["recall"].items()},
            f1={k: float(v) for k, v in doc["f1"].items()},
            roc={
                slug: RocCurve(
                    fpr=np.asarray(c["fpr"], dtype=np.float64),
                    tpr=np.asarray(c["tpr"], dtype=np.float64),
                    thresholds=np.asarray(
                        [np.inf if x is None else x for x in c["thresholds"]],
                        dtype=np.float64,
                    ),
                )
                for slug, c in doc["roc"].items()
            },
            auc={k: float(v) for k, v in doc["auc"].items()},
            warnings=tuple(doc.get("warnings", ())),
            train_accuracy=doc.get("train_accuracy"),
            folds=tuple(report_from_dict(f) for f in doc.get("folds", ())),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"Malformed report document: {exc}") from exc


def dumps_report(report: EvalReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=1) + "\n"


def write_report(report: EvalReport, path: str | Path) -> None:
    Path(path).write_text(dumps_report(report), encoding="utf-8")
    logger.info("Wrote %s report to %s", report.model, path)


def read_report(path: str | Path) -> EvalReport:
    """Read a report document written by :func:`write_report`."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: report document must be a JSON object")
    return report_from_dict(doc)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def accuracy_table(rows: list[tuple[str, EvalReport]]) -> pd.DataFrame:
    """One row per (model title, report) in percent.

    Columns: ``MLA Name``, ``MLA Train Accuracy (%)``, ``MLA Test Accuracy (%)``.
    """
    return pd.DataFrame(
        {
            "MLA Name": [title for title, _ in rows],
            "MLA Train Accuracy (%)": [
                np.nan if r.train_accuracy is None else 100.0 * r.train_accuracy
                for _, r in rows
            ],
            "MLA Test Accuracy (%)": [100.0 * r.accuracy for _, r in rows],
        }
    )


def prf_table(rows: list[tuple[str, EvalReport]]) -> pd.DataFrame:
    """Precision, recall and F1 under every averaging, in percent."""
    table: dict[str, list[Any]] = {"MLA Name": [title for title, _ in rows]}
    metrics = (("Precision", "precision"), ("Recall", "recall"), ("F1-score", "f1"))
    for metric, attr in metrics:
        for averaging in AVERAGINGS:
            column = f"{metric} ({averaging.capitalize()}) (%)"
            table[column] = [100.0 * getattr(r, attr)[averaging] for _, r in rows]
    return pd.DataFrame(table)


def format_table(frame: pd.DataFrame, decimals: int = 2) -> str:
    """Aligned text rendering for the terminal."""
    return frame.to_string(
        index=False, float_format=lambda x: f"{x:.{decimals}f}", na_rep="-"
    )
