"""Domain vocabulary shared by every stage: bands, labels, recordings, matrices.

All containers are frozen dataclasses holding read-only numpy arrays, so they
can be shared between workers without copying concerns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import IntEnum, StrEnum
from typing import Final, Literal

import numpy as np
from numpy.typing import NDArray

logger = logging.getLogger(__name__)

FRAMES_PER_RECORDING: Final[int] = 60  # one-minute stimulus at 1 frame/s


class Band(StrEnum):
    """The eight retained band-power columns, in contractual column order."""

    DELTA = "delta"
    THETA = "theta"
    ALPHA_LOW = "alphaLow"
    ALPHA_HIGH = "alphaHigh"
    BETA_LOW = "betaLow"
    BETA_HIGH = "betaHigh"
    GAMMA_LOW = "gammaLow"
    GAMMA_MID = "gammaMid"


BANDS: Final[tuple[Band, ...]] = tuple(Band)
N_BANDS: Final[int] = len(BANDS)

# Delta/theta/betaLow/betaHigh are the tabulated device ranges; the alpha row
# (8-12 Hz) is split in half; the gamma pair is extrapolated above 30 Hz.
_BAND_RANGES: Final[dict[Band, tuple[float, float]]] = {
    Band.DELTA: (0.1, 3.0),
    Band.THETA: (4.0, 7.0),
    Band.ALPHA_LOW: (8.0, 10.0),
    Band.ALPHA_HIGH: (10.0, 12.0),
    Band.BETA_LOW: (12.0, 15.0),
    Band.BETA_HIGH: (21.0, 30.0),
    Band.GAMMA_LOW: (31.0, 40.0),
    Band.GAMMA_MID: (41.0, 50.0),
}


class AffectLabel(IntEnum):
    """Target affective states. Integer codes are fixed for tie-breaking."""

    HAPPY = 0
    SAD = 1
    DISGUST = 2
    PEACEFUL = 3

    @property
    def slug(self) -> str:
        """Lower-case name used in CSV files and reports."""
        return self.name.lower()


LABELS: Final[tuple[AffectLabel, ...]] = tuple(AffectLabel)
N_CLASSES: Final[int] = len(LABELS)

_LABEL_ALIASES: Final[dict[str, AffectLabel]] = {
    "happy": AffectLabel.HAPPY,
    "funny": AffectLabel.HAPPY,
    "sad": AffectLabel.SAD,
    "disgust": AffectLabel.DISGUST,
    "peaceful": AffectLabel.PEACEFUL,
}

FeatureKind = Literal["statistical", "advanced", "fused", "derived"]

FEATURE_WIDTHS: Final[dict[str, int]] = {
    "statistical": 56,
    "advanced": 64,
    "fused": 120,
}


def band_frequency_range(band: Band) -> tuple[float, float]:
    """Return the (low, high) frequency edges in Hz for *band*."""
    return _BAND_RANGES[Band(band)]


def parse_label(text: str) -> AffectLabel:
    """Parse a label name case-insensitively; ``funny`` is an alias of happy.

    Raises:
        ValueError: If *text* names no known affective state.
    """
    try:
        return _LABEL_ALIASES[text.strip().lower()]
    except KeyError:
        raise ValueError(f"Unknown affect label: {text!r}") from None


def _frozen(values: NDArray[np.float64]) -> NDArray[np.float64]:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RawRecording:
    """One participant watching one stimulus: 60 frames x 8 band powers."""

    participant_id: int
    label: AffectLabel
    frames: NDArray[np.float64]

    def __post_init__(self) -> None:
        object.__setattr__(self, "frames", _frozen(self.frames))
        object.__setattr__(self, "label", AffectLabel(self.label))

    def band(self, band: Band) -> NDArray[np.float64]:
        """Return the time series of one band column."""
        return self.frames[:, BANDS.index(Band(band))]


@dataclass(frozen=True)
class RawDataset:
    """An ordered collection of recordings."""

    recordings: tuple[RawRecording, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "recordings", tuple(self.recordings))

    def __len__(self) -> int:
        return len(self.recordings)

    def label_counts(self) -> dict[AffectLabel, int]:
        """Number of recordings per label, every label present as a key."""
        counts = {label: 0 for label in LABELS}
        for rec in self.recordings:
            counts[rec.label] += 1
        return counts


@dataclass(frozen=True)
class Violation:
    """One broken dataset invariant."""

    kind: str  # frame-count / band-count / non-finite / negative-value / ...
    participant_id: int
    label: AffectLabel
    detail: str


def validate_dataset(ds: RawDataset) -> list[Violation]:
    """Check every recording invariant and (participant, label) uniqueness.

    Violations are returned as data, never raised.

    Args:
        ds: Dataset to check.

    Returns:
        Empty list iff the dataset is well formed.
    """
    violations: list[Violation] = []
    seen: set[tuple[int, AffectLabel]] = set()
    for rec in ds.recordings:
        pid, label = rec.participant_id, rec.label
        if pid < 1:
            violations.append(
                Violation("participant-id", pid, label, "must be a positive integer")
            )
        frames = rec.frames
        if frames.ndim != 2:
            violations.append(
                Violation(
                    "frame-count", pid, label, f"frames have shape {frames.shape}"
                )
            )
            continue
        if frames.shape[0] != FRAMES_PER_RECORDING:
            violations.append(
                Violation(
                    "frame-count",
                    pid,
                    label,
                    f"expected {FRAMES_PER_RECORDING} frames, got {frames.shape[0]}",
                )
            )
        if frames.shape[1] != N_BANDS:
            violations.append(
                Violation(
                    "band-count",
                    pid,
                    label,
                    f"expected {N_BANDS} band columns, got {frames.shape[1]}",
                )
            )
        if not np.all(np.isfinite(frames)):
            violations.append(
                Violation("non-finite", pid, label, "frames contain NaN or inf")
            )
        elif np.any(frames < 0):
            violations.append(
                Violation("negative-value", pid, label, "band powers must be >= 0")
            )
        key = (pid, label)
        if key in seen:
            violations.append(
                Violation(
                    "duplicate-pair",
                    pid,
                    label,
                    f"participant {pid} / {label.slug} appears more than once",
                )
            )
        seen.add(key)
    if violations:
        logger.warning("Dataset has %d violation(s)", len(violations))
    return violations


@dataclass(frozen=True)
class FeatureMatrix:
    """Rows = recordings, columns = named features, with provenance.

    ``participant_ids`` records which recording each row came from. The width
    is fixed for the statistical (56), advanced (64) and fused (120) kinds;
    ``derived`` matrices (selected or reduced columns) may have any width.
    """

    values: NDArray[np.float64]
    column_names: tuple[str, ...]
    labels: NDArray[np.int64]
    kind: FeatureKind
    participant_ids: NDArray[np.int64] = field(
        default_factory=lambda: np.zeros(0, dtype=np.int64)
    )

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise ValueError(f"Feature values must be 2-D, got shape {values.shape}")
        values.setflags(write=False)
        labels = np.array(self.labels, dtype=np.int64, copy=True)
        labels.setflags(write=False)
        pids = np.array(self.participant_ids, dtype=np.int64, copy=True)
        if pids.size == 0:
            pids = np.zeros(values.shape[0], dtype=np.int64)
        pids.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "participant_ids", pids)
        object.__setattr__(self, "column_names", tuple(self.column_names))

        n, p = values.shape
        if len(self.column_names) != p:
            raise ValueError(
                f"{len(self.column_names)} column names for {p} feature columns"
            )
        if len(set(self.column_names)) != p:
            raise ValueError("Feature column names must be unique")
        if labels.shape != (n,) or pids.shape != (n,):
            raise ValueError(
                f"labels/participant_ids must have length {n}, got "
                f"{labels.shape[0]}/{pids.shape[0]}"
            )
        expected = FEATURE_WIDTHS.get(self.kind)
        if expected is not None and p != expected:
            raise ValueError(f"A {self.kind} matrix has {expected} columns, got {p}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Feature values must be finite")

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))

    def select_columns(
        self, indices: list[int] | tuple[int, ...]
    ) -> FeatureMatrix:
        """Return a ``derived`` matrix with the given columns, in that order."""
        idx = list(indices)
        return FeatureMatrix(
            values=self.values[:, idx],
            column_names=tuple(self.column_names[i] for i in idx),
            labels=self.labels,
            kind="derived",
            participant_ids=self.participant_ids,
        )

    def with_values(
        self, values: NDArray[np.float64], column_names: tuple[str, ...]
    ) -> FeatureMatrix:
        """Return a ``derived`` matrix with new columns and the same rows."""
        return FeatureMatrix(
            values=values,
            column_names=column_names,
            labels=self.labels,
            kind="derived",
            participant_ids=self.participant_ids,
        )
