"""Statistical descriptors of a band-power window.

All functions take a 1-D vector and return a single float. They are pure and
use population (1/n) moments throughout.

Statistic order per band: mean, median, std, rms, skewness, kurtosis,
entropy. Kurtosis is the unnormalized form E(s⁴) − 3E(s²)² on the centered
signal s = x − µ, not divided by σ⁴.
"""

from __future__ import annotations

import logging
from typing import Final, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import BANDS, FeatureMatrix, RawDataset, RawRecording
from eegaffect.parallel import parallel_map

logger = logging.getLogger(__name__)

ENTROPY_BINS: Final[int] = 16


def _vector(x: ArrayLike, min_len: int = 1) -> NDArray[np.float64]:
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size < min_len:
        raise ValueError(f"Need at least {min_len} value(s), got {arr.size}")
    return arr


def mean(x: ArrayLike) -> float:
    """Arithmetic mean."""
    return float(np.mean(_vector(x)))


def median(x: ArrayLike) -> float:
    """Middle order statistic; mean of the two middle values for even length."""
    return float(np.median(_vector(x)))


def std(x: ArrayLike) -> float:
    """Population standard deviation (divide by n); exactly 0 for constant input."""
    arr = _vector(x)
    if np.ptp(arr) == 0:
        return 0.0
    return float(np.std(arr))


def rms(x: ArrayLike) -> float:
    """Root mean square."""
    arr = _vector(x)
    return float(np.sqrt(np.mean(arr * arr)))


def skewness(x: ArrayLike) -> float:
    """Third standardized moment E[(x − µ)³]/σ³; 0 when σ = 0."""
    arr = _vector(x, min_len=2)
    centered = arr - arr.mean()
    m2 = np.mean(centered**2)
    if np.ptp(arr) == 0 or m2 == 0:
        return 0.0
    return float(np.mean(centered**3) / m2**1.5)


def kurtosis(x: ArrayLike) -> float:
    """E(s⁴) − 3E(s²)² on the centered signal s = x − µ."""
    arr = _vector(x, min_len=2)
    if np.ptp(arr) == 0:
        return 0.0
    s = arr - arr.mean()
    return float(np.mean(s**4) - 3.0 * np.mean(s**2) ** 2)


def entropy(x: ArrayLike, bins: int = ENTROPY_BINS) -> float:
    """Shannon entropy in bits of an equal-width histogram over [min, max].

    Constant input gives 0; empty bins contribute nothing (0·log 0 = 0).
    """
    arr = _vector(x)
    lo, hi = arr.min(), arr.max()
    if hi == lo:
        return 0.0
    # Bin index from the offset to the minimum, so x + c lands in the same bins.
    idx = np.floor((arr - lo) / (hi - lo) * bins).astype(np.int64)
    counts = np.bincount(np.clip(idx, 0, bins - 1), minlength=bins)
    p = counts[counts > 0] / arr.size
    return float(-np.sum(p * np.log2(p)))


class WindowStats(NamedTuple):
    """The seven descriptors of one band window, in column order."""

    mean: float
    median: float
    std: float
    rms: float
    skewness: float
    kurtosis: float
    entropy: float


STAT_NAMES: Final[tuple[str, ...]] = WindowStats._fields


def window_stats(x: ArrayLike) -> WindowStats:
    """Compute all seven statistics of one window."""
    arr = _vector(x, min_len=2)
    return WindowStats(
        mean=mean(arr),
        median=median(arr),
        std=std(arr),
        rms=rms(arr),
        skewness=skewness(arr),
        kurtosis=kurtosis(arr),
        entropy=entropy(arr),
    )


def stat_column_names() -> tuple[str, ...]:
    """``stat:<band>:<statistic>``, band-major."""
    return tuple(f"stat:{band.value}:{name}" for band in BANDS for name in STAT_NAMES)


def _recording_row(rec: RawRecording) -> list[float]:
    row: list[float] = []
    for j in range(len(BANDS)):
        row.extend(window_stats(rec.frames[:, j]))
    return row


def extract_stat_features(ds: RawDataset, threads: int = 1) -> FeatureMatrix:
    """Build the 56-column statistical feature matrix, one row per recording.

    Args:
        ds: Valid dataset.
        threads: Worker count; output is identical for any value.

    Returns:
        FeatureMatrix of kind ``statistical``.
    """
    rows = parallel_map(_recording_row, ds.recordings, threads)
    names = stat_column_names()
    fm = FeatureMatrix(
        values=np.asarray(rows, dtype=np.float64).reshape(len(rows), len(names)),
        column_names=names,
        labels=np.array([int(rec.label) for rec in ds.recordings], dtype=np.int64),
        kind="statistical",
        participant_ids=np.array(
            [rec.participant_id for rec in ds.recordings], dtype=np.int64
        ),
    )
    logger.info("Extracted statistical features: %d x %d", *fm.shape)
    return fm
