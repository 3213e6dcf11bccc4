"""Feature selection: greedy mRMR and tree-importance ranking."""

from eegaffect.selection.importance import gini_importance, select_by_importance
from eegaffect.selection.mrmr import (
    ANOVA_SENTINEL,
    Criterion,
    SelectionResult,
    anova_f,
    mrmr,
    pearson,
)
from eegaffect.selection.report import apply_selection, write_selection_report

__all__ = [
    "ANOVA_SENTINEL",
    "Criterion",
    "SelectionResult",
    "anova_f",
    "apply_selection",
    "gini_importance",
    "mrmr",
    "pearson",
    "select_by_importance",
    "write_selection_report",
]
