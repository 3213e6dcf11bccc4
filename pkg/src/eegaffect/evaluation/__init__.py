"""Splits, metrics, cross-validation, reports and ROC plots."""

from eegaffect.evaluation.cross_validation import (
    NORMALIZE_MODES,
    cross_validate,
    fit_scaled,
    fit_scaler,
    holdout_evaluate,
)
from eegaffect.evaluation.metrics import (
    RocCurve,
    accuracy,
    auc,
    confusion_matrix,
    prf,
    roc_curve,
)
from eegaffect.evaluation.report import (
    EvalReport,
    build_report,
    read_report,
    write_report,
)
from eegaffect.evaluation.splits import (
    holdout_split,
    kfold_indices,
    stratified_kfold,
)

__all__ = [
    "NORMALIZE_MODES",
    "EvalReport",
    "RocCurve",
    "accuracy",
    "auc",
    "build_report",
    "confusion_matrix",
    "cross_validate",
    "fit_scaled",
    "fit_scaler",
    "holdout_evaluate",
    "holdout_split",
    "kfold_indices",
    "prf",
    "read_report",
    "roc_curve",
    "stratified_kfold",
    "write_report",
]
