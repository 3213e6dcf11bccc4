"""Ingestion: raw/feature CSV formats and preprocessing."""

from eegaffect.ingestion.csv_io import (
    parse_feature_csv,
    parse_raw_csv,
    read_feature_file,
    read_raw_file,
    write_feature_csv,
    write_feature_file,
    write_raw_csv,
    write_raw_file,
)
from eegaffect.ingestion.preprocess import (
    MinMaxScaler,
    apply_minmax,
    clip_dataset,
    clip_outliers,
    fit_minmax,
)

__all__ = [
    "MinMaxScaler",
    "apply_minmax",
    "clip_dataset",
    "clip_outliers",
    "fit_minmax",
    "parse_feature_csv",
    "parse_raw_csv",
    "read_feature_file",
    "read_raw_file",
    "write_feature_csv",
    "write_feature_file",
    "write_raw_csv",
    "write_raw_file",
]
