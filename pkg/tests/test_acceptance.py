"""Acceptance checks on a full-size synthetic cohort of 100 participants."""

import numpy as np
import pytest

PARTICIPANTS = 100


@pytest.fixture(scope="module")
def cohort():
    """The default cohort: 100 participants, seed 42."""
    from eegaffect.data.synth import SynthConfig, generate_dataset

    return generate_dataset(SynthConfig(participants=PARTICIPANTS, seed=42))


@pytest.fixture(scope="module")
def features(cohort):
    """Statistical, advanced and fused feature matrices of the cohort."""
    from eegaffect.features.advanced import extract_advanced_features, fuse
    from eegaffect.features.statistical import extract_stat_features

    stat = extract_stat_features(cohort)
    adv = extract_advanced_features(cohort)
    return {"stat": stat, "advanced": adv, "fused": fuse(stat, adv)}


def holdout_accuracy(fm, seed=42):
    from eegaffect.classify.forest import ForestParams
    from eegaffect.classify.registry import ModelSpec
    from eegaffect.evaluation.cross_validation import holdout_evaluate

    spec = ModelSpec(kind="rf", forest=ForestParams(master_seed=seed), seed=seed)
    report, _ = holdout_evaluate(spec, fm.values, fm.labels, ratio=0.7, seed=seed)
    return report


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------
class TestGeometry:
    def test_raw_row_count(self, cohort):
        from eegaffect.ingestion.csv_io import write_raw_csv

        assert len(write_raw_csv(cohort).splitlines()) == 1 + 24_000

    @pytest.mark.parametrize(
        ("name", "width"), [("stat", 56), ("advanced", 64), ("fused", 120)]
    )
    def test_matrix_shapes(self, features, name, width):
        assert features[name].shape == (400, width)

    def test_stratified_ten_fold_has_ten_per_class(self, features):
        from eegaffect.evaluation.splits import stratified_kfold

        labels = features["fused"].labels
        for fold in stratified_kfold(labels, 10, seed=42):
            assert np.bincount(labels[fold], minlength=4).tolist() == [10] * 4


# ---------------------------------------------------------------------------
# Classification quality
# ---------------------------------------------------------------------------
class TestForestOnCohort:
    def test_fused_holdout_accuracy(self, features):
        report = holdout_accuracy(features["fused"])
        assert 0.80 <= report.accuracy <= 1.0
        assert report.train_accuracy >= 0.99

    def test_fusion_does_not_hurt(self, features):
        def mean_accuracy(fm):
            return np.mean([holdout_accuracy(fm, seed).accuracy for seed in range(5)])

        fused = mean_accuracy(features["fused"])
        stat = mean_accuracy(features["stat"])
        assert fused >= stat - 0.02

    def test_thirty_mrmr_columns_keep_accuracy(self, features):
        from eegaffect.selection.mrmr import mrmr
        from eegaffect.selection.report import apply_selection

        fm = features["fused"]
        selected = apply_selection(fm, mrmr(fm.values, fm.labels, 30, "mid"))
        assert selected.shape == (400, 30)
        full = holdout_accuracy(fm).accuracy
        assert holdout_accuracy(selected).accuracy >= full - 0.05

    def test_no_signal_stays_near_chance(self):
        from eegaffect.data.synth import SynthConfig, generate_dataset
        from eegaffect.features.statistical import extract_stat_features

        ds = generate_dataset(SynthConfig(participants=PARTICIPANTS, separability=0))
        report = holdout_accuracy(extract_stat_features(ds))
        assert 0.15 <= report.accuracy <= 0.40

    def test_accuracy_rises_with_separability(self):
        from eegaffect.data.synth import SynthConfig, generate_dataset
        from eegaffect.features.statistical import extract_stat_features

        means = []
        for separability in (0.0, 1.0, 2.0, 4.0):
            accuracies = []
            for seed in (1, 2, 3):
                cfg = SynthConfig(
                    participants=PARTICIPANTS, seed=seed, separability=separability
                )
                fm = extract_stat_features(generate_dataset(cfg))
                accuracies.append(holdout_accuracy(fm, seed).accuracy)
            means.append(float(np.mean(accuracies)))
        # A few test rows of slack once accuracy saturates.
        assert np.all(np.diff(means) >= -0.01), means
        assert means[-1] >= means[0] + 0.4

    def test_strong_signal_separates_band_means(self):
        from eegaffect.data.models import LABELS
        from eegaffect.data.synth import SynthConfig, class_signature, generate_dataset

        cfg = SynthConfig(participants=25, separability=5.0, noise_scale=0.1)
        centres = np.log([class_signature(label, 5.0) for label in LABELS])
        hits = 0
        ds = generate_dataset(cfg)
        for rec in ds.recordings:
            band_means = np.log(rec.frames).mean(axis=0)
            nearest = int(np.argmin(np.sum((centres - band_means) ** 2, axis=1)))
            hits += nearest == int(rec.label)
        assert hits / len(ds) >= 0.95


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------
class TestPcaOnCohort:
    def test_variance_curve(self, features):
        from eegaffect.reduction.pca import (
            components_for_variance,
            cumulative_explained_variance,
            pca_fit,
        )

        model = pca_fit(features["fused"].values)
        curve = cumulative_explained_variance(model)
        assert np.all(np.diff(curve) >= -1e-12)
        assert curve[-1] == pytest.approx(1.0)
        assert components_for_variance(model, 0.98) < 120


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------
class TestDeterminism:
    def test_features_and_forest_ignore_thread_count(self, cohort, features):
        from eegaffect.classify.forest import ForestParams, fit_forest
        from eegaffect.features.advanced import extract_advanced_features

        adv = extract_advanced_features(cohort, threads=2)
        assert np.array_equal(adv.values, features["advanced"].values)

        fm = features["fused"]
        params = ForestParams(n_trees=20)
        one = fit_forest(fm.values, fm.labels, params, threads=1)
        two = fit_forest(fm.values, fm.labels, params, threads=2)
        assert np.array_equal(
            one.predict_proba(fm.values), two.predict_proba(fm.values)
        )
