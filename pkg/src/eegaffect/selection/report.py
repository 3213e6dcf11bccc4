"""Selection report CSV: one row per chosen column, in pick order."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Final

import pandas as pd

from eegaffect.data.models import FeatureMatrix
from eegaffect.selection.mrmr import SelectionResult

logger = logging.getLogger(__name__)

REPORT_COLUMNS: Final[tuple[str, ...]] = (
    "rank",
    "index",
    "name",
    "score",
    "relevance",
    "redundancy",
)


def selection_frame(
    result: SelectionResult, column_names: tuple[str, ...]
) -> pd.DataFrame:
    """Tabulate a selection; ``rank`` starts at 1."""
    return pd.DataFrame(
        {
            "rank": range(1, result.k + 1),
            "index": result.chosen,
            "name": [column_names[j] for j in result.chosen],
            "score": result.scores,
            "relevance": result.relevance,
            "redundancy": result.redundancy,
        },
        columns=list(REPORT_COLUMNS),
    )


def write_selection_report(
    result: SelectionResult, column_names: tuple[str, ...], path: Path | str
) -> None:
    frame = selection_frame(result, column_names)
    Path(path).write_text(
        frame.to_csv(index=False, lineterminator="\n"), encoding="utf-8"
    )
    logger.info(
        "Wrote %s selection report (%d rows) to %s", result.criterion, result.k, path
    )


def apply_selection(fm: FeatureMatrix, result: SelectionResult) -> FeatureMatrix:
    """Subset *fm* to the chosen columns, in pick order."""
    return fm.select_columns(result.chosen)
