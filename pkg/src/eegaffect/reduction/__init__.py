"""Dimensionality reduction: PCA and LDA."""

from eegaffect.reduction.lda import LdaModel, lda_fit, lda_project, lda_transform
from eegaffect.reduction.pca import (
    PcaModel,
    components_for_variance,
    cumulative_explained_variance,
    explained_variance,
    pca_fit,
    pca_inverse,
    pca_project,
    pca_transform,
)

__all__ = [
    "LdaModel",
    "PcaModel",
    "components_for_variance",
    "cumulative_explained_variance",
    "explained_variance",
    "lda_fit",
    "lda_project",
    "lda_transform",
    "pca_fit",
    "pca_inverse",
    "pca_project",
    "pca_transform",
]
