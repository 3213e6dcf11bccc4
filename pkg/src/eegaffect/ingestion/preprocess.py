"""Outlier clipping and min-max normalization.

Clipping runs on each recording's raw 60x8 frame matrix so the frame
geometry survives; normalization runs on feature matrices, fitted on the
training rows only unless the caller asks for global scaling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
from numpy.typing import NDArray

from eegaffect.data.models import RawDataset, RawRecording

logger = logging.getLogger(__name__)

CLIP_Z: Final[float] = 3.0


def clip_outliers(m: NDArray[np.float64], z: float) -> NDArray[np.float64]:
    """Clamp values farther than ``z`` sample standard deviations from the mean.

    Each column is handled independently; the bound is ``mean ± z·std`` with
    the sample (n − 1) standard deviation. Zero-variance columns pass through.

    Args:
        m: n x p matrix, n >= 2.
        z: Positive clipping threshold.

    Returns:
        A new n x p matrix.

    Raises:
        ValueError: If ``z <= 0`` or fewer than two rows.
    """
    if not z > 0:
        raise ValueError(f"z must be > 0, got {z}")
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 2:
        raise ValueError(
            f"clip_outliers needs an n x p matrix with n >= 2, got {arr.shape}"
        )
    mean = arr.mean(axis=0)
    std = arr.std(axis=0, ddof=1)
    lower = mean - z * std
    upper = mean + z * std
    clipped = np.clip(arr, lower, upper)
    constant = std == 0
    clipped[:, constant] = arr[:, constant]
    return clipped


def clip_dataset(ds: RawDataset, z: float = CLIP_Z) -> RawDataset:
    """Apply :func:`clip_outliers` to every recording's frame matrix."""
    clipped = []
    n_changed = 0
    for rec in ds.recordings:
        frames = clip_outliers(rec.frames, z)
        n_changed += int(np.count_nonzero(frames != rec.frames))
        clipped.append(
            RawRecording(
                participant_id=rec.participant_id, label=rec.label, frames=frames
            )
        )
    logger.info("Clipped %d outlier value(s) at z=%g", n_changed, z)
    return RawDataset(tuple(clipped))


@dataclass(frozen=True)
class MinMaxScaler:
    """Column-wise min and max of the matrix it was fitted on."""

    minimum: NDArray[np.float64]
    maximum: NDArray[np.float64]

    @property
    def n_features(self) -> int:
        return int(self.minimum.shape[0])


def fit_minmax(m: NDArray[np.float64]) -> MinMaxScaler:
    """Record column-wise min and max of an n x p matrix (n >= 1)."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ValueError(f"fit_minmax needs at least one row, got shape {arr.shape}")
    return MinMaxScaler(minimum=arr.min(axis=0), maximum=arr.max(axis=0))


def apply_minmax(s: MinMaxScaler, m: NDArray[np.float64]) -> NDArray[np.float64]:
    """Scale columns to [0, 1] with a fitted scaler.

    Constant columns (max = min) map to 0.0; values outside the fitted range
    are clamped to [0, 1].

    Raises:
        ValueError: If the column count differs from the scaler's.
    """
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != s.n_features:
        raise ValueError(
            f"Scaler fitted on {s.n_features} columns, got matrix of shape {arr.shape}"
        )
    span = s.maximum - s.minimum
    safe = np.where(span > 0, span, 1.0)
    scaled = (arr - s.minimum) / safe
    scaled[:, span <= 0] = 0.0
    return np.clip(scaled, 0.0, 1.0)
