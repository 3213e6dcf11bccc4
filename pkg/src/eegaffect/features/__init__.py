"""Feature extraction: statistical descriptors, transform summaries, fusion."""

from eegaffect.features.advanced import (
    advanced_summaries,
    extract_advanced_features,
    fuse,
    fuse_selected,
)
from eegaffect.features.statistical import extract_stat_features, window_stats

__all__ = [
    "advanced_summaries",
    "extract_advanced_features",
    "extract_stat_features",
    "fuse",
    "fuse_selected",
    "window_stats",
]
