"""Deterministic synthetic band-power datasets.

Stands in for the private 100-participant corpus. Each recording is a
first-order autoregression in log space around a class signature, so band
powers stay positive and right-skewed.

Signature table
---------------
``BASELINE_POWER`` is the shared mean power per band (device units).
``CLASS_LOG_OFFSETS`` shifts it per class in log space; the offset is scaled
by ``SynthConfig.separability``, so separability 0 makes all classes equal.

==========  =====  =====  ========  =========  =======  ========  ========  ========
label       delta  theta  alphaLow  alphaHigh  betaLow  betaHigh  gammaLow  gammaMid
==========  =====  =====  ========  =========  =======  ========  ========  ========
happy        0.00  -0.05    -0.10     -0.10     +0.10    +0.20     +0.10     +0.05
sad         +0.10  +0.15     0.00     -0.15     -0.05    -0.15      0.00     -0.05
disgust     -0.10  -0.10    +0.05     +0.05     +0.20     0.00     +0.15     +0.10
peaceful     0.00  +0.05    +0.20     +0.20     -0.10    -0.15     -0.10     -0.10
==========  =====  =====  ========  =========  =======  ========  ========  ========

Peaceful raises alpha (relaxed, tranquil); happy raises high beta
(alertness, agitation).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Final

import numpy as np
from numpy.typing import NDArray

from eegaffect.data.models import (
    FRAMES_PER_RECORDING,
    LABELS,
    N_BANDS,
    AffectLabel,
    RawDataset,
    RawRecording,
)

logger = logging.getLogger(__name__)

BASELINE_POWER: Final[NDArray[np.float64]] = np.array(
    [100.0, 60.0, 40.0, 35.0, 30.0, 25.0, 15.0, 10.0]
)

CLASS_LOG_OFFSETS: Final[dict[AffectLabel, NDArray[np.float64]]] = {
    AffectLabel.HAPPY: np.array([0.00, -0.05, -0.10, -0.10, 0.10, 0.20, 0.10, 0.05]),
    AffectLabel.SAD: np.array([0.10, 0.15, 0.00, -0.15, -0.05, -0.15, 0.00, -0.05]),
    AffectLabel.DISGUST: np.array([-0.10, -0.10, 0.05, 0.05, 0.20, 0.00, 0.15, 0.10]),
    AffectLabel.PEACEFUL: np.array(
        [0.00, 0.05, 0.20, 0.20, -0.10, -0.15, -0.10, -0.10]
    ),
}


@dataclass(frozen=True)
class SynthConfig:
    """Generator parameters.

    Attributes:
        participants: Number of participants; each contributes one recording
            per label.
        seed: Master seed (unsigned 64-bit).
        separability: Scale of the class offsets, >= 0.
        ar_coeff: Frame-to-frame autocorrelation of the log-noise, in [0, 1).
        noise_scale: Standard deviation of the stationary log-noise, > 0.
    """

    participants: int = 100
    seed: int = 42
    separability: float = 2.0
    ar_coeff: float = 0.6
    noise_scale: float = 0.3

    def __post_init__(self) -> None:
        if self.participants < 1:
            raise ValueError(f"participants must be >= 1, got {self.participants}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(
                f"seed must be an unsigned 64-bit integer, got {self.seed}"
            )
        if not self.separability >= 0:
            raise ValueError(f"separability must be >= 0, got {self.separability}")
        if not 0 <= self.ar_coeff < 1:
            raise ValueError(f"ar_coeff must be in [0, 1), got {self.ar_coeff}")
        if not self.noise_scale > 0:
            raise ValueError(f"noise_scale must be > 0, got {self.noise_scale}")


def class_signature(
    label: AffectLabel, separability: float = 1.0
) -> NDArray[np.float64]:
    """Return the 8-band mean power vector for *label*.

    Args:
        label: Affective state.
        separability: Scale applied to the class log-offsets.

    Returns:
        Positive, finite 8-vector in band order.
    """
    offsets = CLASS_LOG_OFFSETS[AffectLabel(label)]
    return np.asarray(BASELINE_POWER * np.exp(separability * offsets))


def _generate_recording(
    cfg: SynthConfig, participant_id: int, label: AffectLabel
) -> RawRecording:
    # Stream keyed on (seed, participant, label): independent of generation order.
    rng = np.random.default_rng([cfg.seed, participant_id, int(label)])
    signature = class_signature(label, cfg.separability)
    innovation = np.sqrt(1.0 - cfg.ar_coeff**2)
    z = np.empty((FRAMES_PER_RECORDING, N_BANDS))
    z[0] = rng.standard_normal(N_BANDS)
    for t in range(1, FRAMES_PER_RECORDING):
        z[t] = cfg.ar_coeff * z[t - 1] + innovation * rng.standard_normal(N_BANDS)
    frames = signature * np.exp(cfg.noise_scale * z)
    return RawRecording(participant_id=participant_id, label=label, frames=frames)


def generate_dataset(cfg: SynthConfig) -> RawDataset:
    """Generate ``cfg.participants x 4`` recordings.

    Identical configs produce bit-identical datasets. Recordings are ordered
    by participant id, then label code.
    """
    recordings = [
        _generate_recording(cfg, pid, label)
        for pid in range(1, cfg.participants + 1)
        for label in LABELS
    ]
    logger.info(
        "Generated %d recordings (participants=%d, seed=%d, separability=%g)",
        len(recordings),
        cfg.participants,
        cfg.seed,
        cfg.separability,
    )
    return RawDataset(tuple(recordings))
