"""Domain vocabulary and the synthetic band-power generator."""

from eegaffect.data.models import (
    BANDS,
    LABELS,
    AffectLabel,
    Band,
    FeatureMatrix,
    RawDataset,
    RawRecording,
    Violation,
    band_frequency_range,
    parse_label,
    validate_dataset,
)

__all__ = [
    "BANDS",
    "LABELS",
    "AffectLabel",
    "Band",
    "FeatureMatrix",
    "RawDataset",
    "RawRecording",
    "Violation",
    "band_frequency_range",
    "parse_label",
    "validate_dataset",
]
