"""One-vs-rest ROC figure rendered to SVG with matplotlib.

Output bytes depend only on the report: the SVG id salt is fixed and the
date metadata is dropped. Each class curve carries the element id
``roc-<label>``; the chance diagonal is ``roc-chance``.
"""

from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import Final

import matplotlib
from matplotlib.figure import Figure

from eegaffect.data.models import LABELS
from eegaffect.evaluation.report import EvalReport

logger = logging.getLogger(__name__)

CLASS_COLOURS: Final[dict[str, str]] = {
    "happy": "#d62728",
    "sad": "#1f77b4",
    "disgust": "#2ca02c",
    "peaceful": "#9467bd",
}

_SVG_RC: Final[dict[str, str]] = {"svg.hashsalt": "eegaffect", "svg.fonttype": "none"}


def render_roc_svg(report: EvalReport) -> str:
    """Draw the report's per-class ROC curves and return the SVG text.

    Raises:
        ValueError: The report has no ROC curves.
    """
    if not report.roc:
        raise ValueError("Report has no ROC section to plot")
    with matplotlib.rc_context(_SVG_RC):
        fig = Figure(figsize=(6, 6))
        ax = fig.subplots()
        for label in LABELS:
            curve = report.roc.get(label.slug)
            if curve is None:
                continue
            auc_text = f"{report.auc[label.slug]:.3f}"
            (line,) = ax.plot(
                curve.fpr,
                curve.tpr,
                color=CLASS_COLOURS[label.slug],
                linewidth=1.5,
                label=f"{label.slug.upper()} (AUC = {auc_text})",
            )
            line.set_gid(f"roc-{label.slug}")
        (chance,) = ax.plot([0, 1], [0, 1], color="grey", linestyle="--", linewidth=1)
        chance.set_gid("roc-chance")
        ax.set_xlim(0.0, 1.0)
        ax.set_ylim(0.0, 1.05)
        ax.set_xlabel("False Positive Rate")
        ax.set_ylabel("True Positive Rate")
        ax.set_title(f"ROC, {report.model} ({report.protocol})")
        ax.legend(loc="lower right")
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_roc_svg(report: EvalReport, path: str | Path) -> None:
    Path(path).write_text(render_roc_svg(report), encoding="utf-8")
    logger.info("Wrote ROC plot (%d curves) to %s", len(report.roc), path)
