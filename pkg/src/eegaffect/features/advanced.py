"""Advanced (transform-based) features and feature-level fusion.

Every band series is reduced to eight scale-invariant scalars:

=================  ============================================================
stft_entropy       entropy (bits) of the time-averaged, normalized STFT magnitude
dwt_ratio          log((detail energy + ε) / (approx energy + ε)), Haar, 3 levels
dct_compaction     energy in the first 8 orthonormal DCT-II coefficients / total
fft_dominance      largest one-sided non-DC magnitude / sum of those magnitudes
wvd_entropy        entropy (bits) of the normalized |WVD|
mix_a              fft_dominance × dct_compaction
mix_b              stft_entropy − wvd_entropy
mix_c              dwt_ratio × fft_dominance
=================  ============================================================

FFT, DWT and WVD run on the series zero-padded from 60 to 64 samples.
A constant series has fixed values: entropies 0, fft_dominance 0,
dct_compaction 1, dwt_ratio log(ε / (approx energy + ε)).
"""

from __future__ import annotations

import logging
from typing import Final, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from eegaffect.data.models import BANDS, FeatureMatrix, RawDataset, RawRecording
from eegaffect.features.transforms import (
    dct2,
    dwt_haar,
    fft,
    pad_to_power_of_two,
    stft,
    wvd,
)
from eegaffect.parallel import parallel_map

logger = logging.getLogger(__name__)

EPSILON: Final[float] = 1e-12
DWT_LEVELS: Final[int] = 3
DCT_KEEP: Final[int] = 8


class AdvancedSummary(NamedTuple):
    """Eight transform summaries of one band series, in column order."""

    stft_entropy: float
    dwt_ratio: float
    dct_compaction: float
    fft_dominance: float
    wvd_entropy: float
    mix_a: float
    mix_b: float
    mix_c: float


SUMMARY_NAMES: Final[tuple[str, ...]] = AdvancedSummary._fields


def _distribution_entropy(weights: NDArray[np.float64]) -> float:
    total = weights.sum()
    if total <= 0:
        return 0.0
    p = weights[weights > 0] / total
    return float(-np.sum(p * np.log2(p)))


def advanced_summaries(x: ArrayLike) -> AdvancedSummary:
    """Compute the eight advanced summaries of one band series.

    Raises:
        ValueError: If the input contains non-finite values.
    """
    arr = np.asarray(x, dtype=np.float64).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("advanced_summaries needs finite input")
    padded = pad_to_power_of_two(arr)
    coeffs = dwt_haar(padded, DWT_LEVELS)
    approx_energy = float(np.sum(coeffs.approx**2))

    if np.ptp(arr) == 0:
        dwt_ratio = float(np.log(EPSILON / (approx_energy + EPSILON)))
        return AdvancedSummary(0.0, dwt_ratio, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    stft_entropy = _distribution_entropy(stft(arr).frames.mean(axis=0))

    detail_energy = float(sum(np.sum(d**2) for d in coeffs.details))
    dwt_ratio = float(np.log((detail_energy + EPSILON) / (approx_energy + EPSILON)))

    c = dct2(arr)
    energy = c**2
    dct_compaction = float(energy[:DCT_KEEP].sum() / energy.sum())

    magnitude = fft(padded).magnitude
    one_sided = magnitude[1 : padded.size // 2 + 1]
    total = one_sided.sum()
    fft_dominance = float(one_sided.max() / total) if total > 0 else 0.0

    wvd_entropy = _distribution_entropy(np.abs(wvd(padded).values))

    return AdvancedSummary(
        stft_entropy=stft_entropy,
        dwt_ratio=dwt_ratio,
        dct_compaction=dct_compaction,
        fft_dominance=fft_dominance,
        wvd_entropy=wvd_entropy,
        mix_a=fft_dominance * dct_compaction,
        mix_b=stft_entropy - wvd_entropy,
        mix_c=dwt_ratio * fft_dominance,
    )


def advanced_column_names() -> tuple[str, ...]:
    """``adv:<band>:<summary>``, band-major."""
    return tuple(
        f"adv:{band.value}:{name}" for band in BANDS for name in SUMMARY_NAMES
    )


def _recording_row(rec: RawRecording) -> list[float]:
    row: list[float] = []
    for j in range(len(BANDS)):
        row.extend(advanced_summaries(rec.frames[:, j]))
    return row


def extract_advanced_features(ds: RawDataset, threads: int = 1) -> FeatureMatrix:
    """Build the 64-column advanced feature matrix, one row per recording."""
    rows = parallel_map(_recording_row, ds.recordings, threads)
    names = advanced_column_names()
    fm = FeatureMatrix(
        values=np.asarray(rows, dtype=np.float64).reshape(len(rows), len(names)),
        column_names=names,
        labels=np.array([int(rec.label) for rec in ds.recordings], dtype=np.int64),
        kind="advanced",
        participant_ids=np.array(
            [rec.participant_id for rec in ds.recordings], dtype=np.int64
        ),
    )
    logger.info("Extracted advanced features: %d x %d", *fm.shape)
    return fm


def _check_aligned(left: FeatureMatrix, right: FeatureMatrix) -> None:
    if left.shape[0] == 0 or right.shape[0] == 0:
        raise ValueError("Cannot fuse an empty feature matrix")
    if left.shape[0] != right.shape[0]:
        raise ValueError(
            f"Row count mismatch: {left.shape[0]} vs {right.shape[0]} recordings"
        )
    if not np.array_equal(left.labels, right.labels):
        raise ValueError("Label mismatch: matrices must share row order and labels")
    if not np.array_equal(left.participant_ids, right.participant_ids):
        raise ValueError("Participant mismatch: matrices must share row order")


def fuse(stat: FeatureMatrix, adv: FeatureMatrix) -> FeatureMatrix:
    """Concatenate statistical and advanced columns (statistical block first).

    Raises:
        ValueError: Wrong kinds, empty input, or rows that do not line up.
    """
    if stat.kind != "statistical" or adv.kind != "advanced":
        raise ValueError(
            "fuse expects statistical + advanced matrices, "
            f"got {stat.kind} + {adv.kind}"
        )
    _check_aligned(stat, adv)
    return FeatureMatrix(
        values=np.hstack([stat.values, adv.values]),
        column_names=stat.column_names + adv.column_names,
        labels=stat.labels,
        kind="fused",
        participant_ids=stat.participant_ids,
    )


def fuse_selected(left: FeatureMatrix, right: FeatureMatrix) -> FeatureMatrix:
    """Concatenate two already-selected column subsets into a ``derived`` matrix."""
    _check_aligned(left, right)
    return FeatureMatrix(
        values=np.hstack([left.values, right.values]),
        column_names=left.column_names + right.column_names,
        labels=left.labels,
        kind="derived",
        participant_ids=left.participant_ids,
    )
