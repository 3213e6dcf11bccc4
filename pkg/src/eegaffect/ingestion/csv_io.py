"""Raw band-power CSV and feature CSV formats.

Raw CSV
-------
Header ``participant_id,label,t,delta,theta,alphaLow,alphaHigh,betaLow,
betaHigh,gammaLow,gammaMid``; one row per (recording, second), t in 0..59.
Labels are case-insensitive names; ``funny`` is accepted for happy.

Feature CSV
-----------
Header ``participant_id,label`` followed by the matrix column names; one row
per recording. The matrix kind is inferred from the column names.

Both formats are UTF-8, ``.`` decimal separator, no thousands separators.
Floats are written with shortest round-trip precision, so parse(write(x))
reproduces x exactly.
"""

from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import Any, Final

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from eegaffect.data.models import (
    BANDS,
    FEATURE_WIDTHS,
    FRAMES_PER_RECORDING,
    AffectLabel,
    FeatureKind,
    FeatureMatrix,
    RawDataset,
    RawRecording,
    parse_label,
)

logger = logging.getLogger(__name__)

RAW_COLUMNS: Final[tuple[str, ...]] = (
    "participant_id",
    "label",
    "t",
    *(band.value for band in BANDS),
)
_KEY_COLUMNS: Final[tuple[str, str]] = ("participant_id", "label")


def _read_text_frame(text: str) -> pd.DataFrame:
    return pd.read_csv(
        io.StringIO(text),
        dtype=str,
        keep_default_na=False,
        skipinitialspace=False,
    )


def _header(text: str) -> list[str]:
    first = text.lstrip("\ufeff").split("\n", 1)[0].rstrip("\r")
    return first.split(",") if first else []


def _cell(raw: object, row: int, column: str) -> str:
    # Short rows come back from pandas as NaN in the trailing columns.
    if not isinstance(raw, str):
        raise ValueError(f"Row {row + 2}: missing {column}")
    return raw


def _numeric_column(
    df: pd.DataFrame, column: str, *, integer: bool = False
) -> NDArray[Any]:
    # float()/int() parse exactly; shortest-repr text round-trips bit for bit.
    convert = int if integer else float
    out = []
    for row, raw in enumerate(df[column]):
        text = _cell(raw, row, column)
        try:
            out.append(convert(text.strip()))
        except ValueError:
            raise ValueError(
                f"Row {row + 2}: non-numeric {column} value {raw!r}"
            ) from None
    return np.asarray(out, dtype=np.int64 if integer else np.float64)


def parse_raw_csv(text: str) -> RawDataset:
    """Parse raw band-power CSV text into a dataset.

    Rows are grouped by (participant_id, label) and ordered by t. Recordings
    appear in order of first occurrence.

    Args:
        text: Whole file contents.

    Returns:
        RawDataset with one 60x8 recording per (participant, label).

    Raises:
        ValueError: Malformed header, non-numeric value, unknown label,
            duplicate or missing t, or a recording without exactly 60 rows.
            Messages name the file row (header = row 1) or the recording.
    """
    header = _header(text)
    if tuple(header) != RAW_COLUMNS:
        raise ValueError(
            f"Malformed header: expected {','.join(RAW_COLUMNS)!r}, "
            f"got {','.join(header)!r}"
        )
    df = _read_text_frame(text.lstrip("\ufeff"))
    if df.empty:
        logger.warning("Raw CSV has a header but no data rows")
        return RawDataset(())

    pids = _numeric_column(df, "participant_id", integer=True)
    ts = _numeric_column(df, "t", integer=True)
    powers = np.column_stack([_numeric_column(df, band.value) for band in BANDS])
    labels: list[AffectLabel] = []
    for row, raw_label in enumerate(df["label"]):
        try:
            labels.append(parse_label(_cell(raw_label, row, "label")))
        except ValueError as exc:
            raise ValueError(f"Row {row + 2}: {exc}") from None

    groups: dict[tuple[int, AffectLabel], dict[int, int]] = {}
    for row, (pid, label, t) in enumerate(zip(pids, labels, ts, strict=True)):
        rows_by_t = groups.setdefault((int(pid), label), {})
        if t in rows_by_t:
            raise ValueError(
                f"Row {row + 2}: duplicate t={t} for participant {pid}, "
                f"label {label.slug}"
            )
        if not 0 <= t < FRAMES_PER_RECORDING:
            raise ValueError(
                f"Row {row + 2}: t={t} outside 0..{FRAMES_PER_RECORDING - 1}"
            )
        rows_by_t[int(t)] = row

    recordings = []
    for (pid, label), rows_by_t in groups.items():
        missing = sorted(set(range(FRAMES_PER_RECORDING)) - rows_by_t.keys())
        if missing:
            raise ValueError(
                f"Participant {pid}, label {label.slug}: missing t="
                f"{','.join(str(t) for t in missing)} "
                f"(a recording needs {FRAMES_PER_RECORDING} rows)"
            )
        order = [rows_by_t[t] for t in range(FRAMES_PER_RECORDING)]
        recordings.append(
            RawRecording(participant_id=pid, label=label, frames=powers[order])
        )
    logger.info("Parsed %d recordings from %d rows", len(recordings), len(df))
    return RawDataset(tuple(recordings))


def write_raw_csv(ds: RawDataset) -> str:
    """Serialize a dataset to raw CSV text, recordings in dataset order."""
    blocks = []
    for rec in ds.recordings:
        block = pd.DataFrame(rec.frames, columns=[band.value for band in BANDS])
        block.insert(0, "t", np.arange(FRAMES_PER_RECORDING))
        block.insert(0, "label", rec.label.slug)
        block.insert(0, "participant_id", rec.participant_id)
        blocks.append(block)
    if blocks:
        frame = pd.concat(blocks, ignore_index=True)
    else:
        frame = pd.DataFrame(columns=list(RAW_COLUMNS))
    return frame.to_csv(index=False, lineterminator="\n")


def read_raw_file(path: Path | str) -> RawDataset:
    """Read and parse a raw CSV file."""
    path = Path(path)
    logger.info("Reading raw recordings: %s", path)
    return parse_raw_csv(path.read_text(encoding="utf-8"))


def write_raw_file(ds: RawDataset, path: Path | str) -> None:
    """Write a dataset as raw CSV."""
    Path(path).write_text(write_raw_csv(ds), encoding="utf-8")


def _infer_kind(column_names: tuple[str, ...]) -> FeatureKind:
    stat = all(name.startswith("stat:") for name in column_names)
    adv = all(name.startswith("adv:") for name in column_names)
    width = len(column_names)
    if stat and width == FEATURE_WIDTHS["statistical"]:
        return "statistical"
    if adv and width == FEATURE_WIDTHS["advanced"]:
        return "advanced"
    n_stat = FEATURE_WIDTHS["statistical"]
    if (
        width == FEATURE_WIDTHS["fused"]
        and all(name.startswith("stat:") for name in column_names[:n_stat])
        and all(name.startswith("adv:") for name in column_names[n_stat:])
    ):
        return "fused"
    return "derived"


def write_feature_csv(fm: FeatureMatrix) -> str:
    """Serialize a feature matrix to feature CSV text."""
    frame = pd.DataFrame(fm.values, columns=list(fm.column_names))
    frame.insert(0, "label", [AffectLabel(code).slug for code in fm.labels])
    frame.insert(0, "participant_id", fm.participant_ids)
    return frame.to_csv(index=False, lineterminator="\n")


def parse_feature_csv(text: str) -> FeatureMatrix:
    """Parse feature CSV text.

    Raises:
        ValueError: Missing key columns, no feature columns, unknown label or
            non-numeric value (message names the file row).
    """
    header = _header(text)
    if tuple(header[:2]) != _KEY_COLUMNS or len(header) < 3:
        raise ValueError(
            "Malformed feature header: expected 'participant_id,label,' followed "
            "by at least one feature column"
        )
    df = _read_text_frame(text.lstrip("\ufeff"))
    names = tuple(header[2:])
    pids = _numeric_column(df, "participant_id", integer=True)
    labels = []
    for row, raw_label in enumerate(df["label"]):
        try:
            labels.append(int(parse_label(_cell(raw_label, row, "label"))))
        except ValueError as exc:
            raise ValueError(f"Row {row + 2}: {exc}") from None
    if df.empty:
        values = np.zeros((0, len(names)))
    else:
        values = np.column_stack([_numeric_column(df, name) for name in names])
    return FeatureMatrix(
        values=values,
        column_names=names,
        labels=np.asarray(labels, dtype=np.int64),
        kind=_infer_kind(names),
        participant_ids=pids,
    )


def read_feature_file(path: Path | str) -> FeatureMatrix:
    """Read and parse a feature CSV file."""
    path = Path(path)
    fm = parse_feature_csv(path.read_text(encoding="utf-8"))
    logger.info("Read %s feature matrix %s from %s", fm.kind, fm.shape, path)
    return fm


def write_feature_file(fm: FeatureMatrix, path: Path | str) -> None:
    """Write a feature matrix as feature CSV."""
    Path(path).write_text(write_feature_csv(fm), encoding="utf-8")
