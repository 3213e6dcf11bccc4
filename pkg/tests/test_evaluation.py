"""Tests for splits, metrics, ROC, reports and the evaluation protocols."""

import json
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest

CENTRES = np.array([[0.0, 0.0], [8.0, 0.0], [0.0, 8.0], [8.0, 8.0]])


@pytest.fixture(scope="module")
def blobs():
    """Four 2-D Gaussian classes, 20 rows each, sorted by class."""
    rng = np.random.default_rng(0)
    X = np.vstack([c + rng.normal(size=(20, 2)) for c in CENTRES])
    y = np.repeat(np.arange(4), 20)
    return X, y


@pytest.fixture(scope="module")
def nb_report(blobs):
    """Stratified holdout report of Gaussian NB on the blobs."""
    from eegaffect.classify.registry import ModelSpec
    from eegaffect.evaluation.cross_validation import holdout_evaluate

    X, y = blobs
    report, _ = holdout_evaluate(ModelSpec(kind="nb"), X, y)
    return report


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------
class TestHoldoutSplit:
    def test_sizes_partition_and_order(self):
        from eegaffect.evaluation.splits import holdout_split

        train, test = holdout_split(10, 0.7, seed=1)
        assert (train.size, test.size) == (7, 3)
        assert sorted(np.concatenate([train, test]).tolist()) == list(range(10))
        assert np.all(np.diff(train) > 0)
        assert np.all(np.diff(test) > 0)

    def test_same_seed_same_split(self):
        from eegaffect.evaluation.splits import holdout_split

        a = holdout_split(50, 0.7, seed=3)
        b = holdout_split(50, 0.7, seed=3)
        c = holdout_split(50, 0.7, seed=4)
        assert np.array_equal(a[0], b[0])
        assert not np.array_equal(a[0], c[0])

    def test_stratified_keeps_class_proportions(self):
        from eegaffect.evaluation.splits import holdout_split

        y = np.repeat(np.arange(4), 100)
        train, test = holdout_split(400, 0.7, y, seed=0, stratified=True)
        assert np.bincount(y[train]).tolist() == [70] * 4
        assert np.bincount(y[test]).tolist() == [30] * 4

    def test_stratified_uneven_classes_total_matches_ratio(self):
        from eegaffect.evaluation.splits import holdout_split

        y = np.array([0] * 5 + [1] * 5 + [2] * 3)
        train, _ = holdout_split(13, 0.5, y, stratified=True)
        assert train.size == 7

    @pytest.mark.parametrize("ratio", [0.0, 1.0, 0.01])
    def test_degenerate_ratio_rejected(self, ratio):
        from eegaffect.evaluation.splits import holdout_split

        with pytest.raises(ValueError):
            holdout_split(10, ratio)

    def test_stratified_singleton_class_rejected(self):
        from eegaffect.evaluation.splits import holdout_split

        y = np.array([0, 0, 0, 0, 1])
        with pytest.raises(ValueError, match="class 1"):
            holdout_split(5, 0.7, y, stratified=True)


class TestKFold:
    def test_fold_sizes_differ_by_at_most_one(self):
        from eegaffect.evaluation.splits import kfold_indices

        folds = kfold_indices(10, 3, seed=0)
        assert sorted(f.size for f in folds) == [3, 3, 4]
        assert sorted(np.concatenate(folds).tolist()) == list(range(10))

    def test_stratified_folds_balance_every_class(self):
        from eegaffect.evaluation.splits import stratified_kfold

        y = np.repeat(np.arange(4), 10)
        folds = stratified_kfold(y, 10, seed=0)
        for fold in folds:
            assert np.bincount(y[fold], minlength=4).tolist() == [1, 1, 1, 1]

    def test_stratified_fold_totals_stay_balanced(self):
        from eegaffect.evaluation.splits import stratified_kfold

        y = np.repeat(np.arange(3), 5)
        folds = stratified_kfold(y, 2, seed=0)
        assert sorted(f.size for f in folds) == [7, 8]
        for fold in folds:
            assert all(c in (2, 3) for c in np.bincount(y[fold]))

    def test_k_above_smallest_class_rejected(self):
        from eegaffect.evaluation.splits import stratified_kfold

        with pytest.raises(ValueError, match="smallest class"):
            stratified_kfold([0, 0, 0, 1, 1], 3)

    def test_k_out_of_range_rejected(self):
        from eegaffect.evaluation.splits import kfold_indices

        with pytest.raises(ValueError):
            kfold_indices(5, 6)


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------
class TestConfusionMetrics:
    def test_confusion_and_accuracy(self):
        from eegaffect.evaluation.metrics import accuracy, confusion_matrix

        conf = confusion_matrix([0, 1, 2, 3, 3], [0, 1, 2, 3, 0])
        assert conf[3, 0] == 1
        assert np.trace(conf) == 4
        assert accuracy(conf) == pytest.approx(0.8)

    def test_invalid_code_rejected(self):
        from eegaffect.evaluation.metrics import confusion_matrix

        with pytest.raises(ValueError, match="class codes"):
            confusion_matrix([0, 4], [0, 1])

    def test_averaged_scores(self):
        from eegaffect.evaluation.metrics import confusion_matrix, prf

        conf = confusion_matrix([0, 0, 1, 1], [0, 1, 1, 1])
        macro = prf(conf, "macro")
        assert macro.precision == pytest.approx(5 / 6)
        assert macro.recall == pytest.approx(0.75)
        assert macro.f1 == pytest.approx((2 / 3 + 0.8) / 2)
        assert prf(conf, "weighted").recall == pytest.approx(0.75)
        assert prf(conf, "micro") == (0.75, 0.75, 0.75)

    def test_weighted_average_uses_support(self):
        from eegaffect.evaluation.metrics import confusion_matrix, prf

        conf = confusion_matrix([0, 0, 0, 1], [0, 0, 0, 0])
        # Class 0: P = 3/4, R = 1; class 1: P = R = 0.
        assert prf(conf, "weighted").recall == pytest.approx(0.75)
        assert prf(conf, "macro").recall == pytest.approx(0.5)

    def test_zero_division_is_zero_with_warnings(self):
        from eegaffect.evaluation.metrics import confusion_matrix, per_class_prf

        scores = per_class_prf(confusion_matrix([0, 0], [1, 1]))
        assert scores.precision.tolist() == [0.0] * 4
        assert scores.recall.tolist() == [0.0] * 4
        assert any("precision of happy" in w for w in scores.warnings)
        assert any("recall of sad" in w for w in scores.warnings)

    def test_unknown_averaging_rejected(self):
        from eegaffect.evaluation.metrics import prf

        with pytest.raises(ValueError, match="averaging"):
            prf(np.eye(4), "samples")


class TestRoc:
    def test_hand_computed_curve(self):
        from eegaffect.evaluation.metrics import auc, roc_curve

        scores = [0.9, 0.8, 0.7, 0.6, 0.5, 0.4]
        positives = [True, True, False, True, False, False]
        curve = roc_curve(scores, positives)
        assert np.isinf(curve.thresholds[0])
        assert curve.fpr.tolist() == pytest.approx([0, 0, 0, 1 / 3, 1 / 3, 2 / 3, 1])
        assert curve.tpr.tolist() == pytest.approx([0, 1 / 3, 2 / 3, 2 / 3, 1, 1, 1])
        assert auc(curve) == pytest.approx(8 / 9)

    def test_tied_scores_form_one_step(self):
        from eegaffect.evaluation.metrics import auc, roc_curve

        curve = roc_curve([0.5, 0.5], [True, False])
        assert curve.fpr.tolist() == [0.0, 1.0]
        assert curve.tpr.tolist() == [0.0, 1.0]
        assert auc(curve) == pytest.approx(0.5)

    def test_single_class_rejected(self):
        from eegaffect.evaluation.metrics import roc_curve

        with pytest.raises(ValueError, match="positive and one negative"):
            roc_curve([0.1, 0.2], [True, True])


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------
class TestReport:
    def test_absent_class_skips_roc_with_warning(self):
        from eegaffect.evaluation.report import build_report

        true = [0, 0, 1, 1]
        scores = np.full((4, 4), 0.25)
        report = build_report(true, [0, 0, 1, 1], scores, "nb", "test")
        assert set(report.roc) == {"happy", "sad"}
        assert any("ROC of disgust skipped" in w for w in report.warnings)
        assert report.accuracy == 1.0
        assert report.n == 4

    def test_score_shape_checked(self):
        from eegaffect.evaluation.report import build_report

        with pytest.raises(ValueError, match="scores must be"):
            build_report([0, 1], [0, 1], np.zeros((2, 3)), "nb", "test")

    def test_document_round_trip(self, nb_report, tmp_path):
        from eegaffect.evaluation.report import read_report, write_report

        path = tmp_path / "report.json"
        write_report(nb_report, path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["format"] == "eegaffect-report"
        assert doc["roc"]["happy"]["thresholds"][0] is None
        back = read_report(path)
        assert np.array_equal(back.confusion, nb_report.confusion)
        assert back.auc == nb_report.auc
        assert np.isinf(back.roc["happy"].thresholds[0])
        assert back.precision == nb_report.precision

    def test_wrong_document_rejected(self, tmp_path):
        from eegaffect.evaluation.report import read_report

        path = tmp_path / "x.json"
        path.write_text('{"format": "eegaffect-model"}', encoding="utf-8")
        with pytest.raises(ValueError, match="Not a report"):
            read_report(path)

    def test_accuracy_table_columns(self, nb_report):
        from eegaffect.evaluation.report import accuracy_table

        table = accuracy_table([("Gaussian NB", nb_report)])
        assert list(table.columns) == [
            "MLA Name",
            "MLA Train Accuracy (%)",
            "MLA Test Accuracy (%)",
        ]
        assert table.loc[0, "MLA Test Accuracy (%)"] == pytest.approx(
            100 * nb_report.accuracy
        )

    def test_missing_train_accuracy_is_nan(self):
        from eegaffect.evaluation.report import accuracy_table, build_report

        report = build_report([0, 1], [0, 1], np.eye(4)[[0, 1]], "nb", "test")
        table = accuracy_table([("Gaussian NB", report)])
        assert pd.isna(table.loc[0, "MLA Train Accuracy (%)"])

    def test_prf_table_has_every_averaging(self, nb_report):
        from eegaffect.evaluation.report import format_table, prf_table

        table = prf_table([("Gaussian NB", nb_report)])
        assert "Precision (Macro) (%)" in table.columns
        assert "F1-score (Weighted) (%)" in table.columns
        assert "Recall (Micro) (%)" in table.columns
        assert "Gaussian NB" in format_table(table)


# ---------------------------------------------------------------------------
# Protocols
# ---------------------------------------------------------------------------
class TestScaleSplit:
    def test_train_fit_and_global_differ(self):
        from eegaffect.evaluation.cross_validation import scale_split

        X = np.array([[0.0], [10.0], [20.0]])
        train, test = np.array([0, 1]), np.array([2])
        tr, te = scale_split(X, train, test, "train-fit")
        assert tr[:, 0].tolist() == [0.0, 1.0]
        assert te[:, 0].tolist() == [1.0]
        tr, _ = scale_split(X, train, test, "global")
        assert tr[:, 0].tolist() == [0.0, 0.5]
        tr, _ = scale_split(X, train, test, "none")
        assert tr[:, 0].tolist() == [0.0, 10.0]

    def test_unknown_mode_rejected(self):
        from eegaffect.evaluation.cross_validation import scale_split

        with pytest.raises(ValueError, match="normalize"):
            scale_split(np.zeros((2, 1)), np.array([0]), np.array([1]), "zscore")


class TestHoldoutEvaluate:
    def test_separable_data_scores_high(self, nb_report):
        assert nb_report.n == 24
        assert nb_report.accuracy >= 0.9
        assert nb_report.train_accuracy >= 0.9
        assert "holdout" in nb_report.protocol
        assert set(nb_report.roc) == {"happy", "sad", "disgust", "peaceful"}

    def test_returns_model_trained_on_train_rows(self, blobs):
        from eegaffect.classify.forest import ForestParams
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import holdout_evaluate

        X, y = blobs
        spec = ModelSpec(kind="rf", forest=ForestParams(n_trees=5))
        _, model = holdout_evaluate(spec, X, y, seed=2)
        assert model.n_features == 2
        assert model.model.n_trees == 5

    def test_model_carries_scaler_fitted_on_train_rows(self, blobs):
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import holdout_evaluate
        from eegaffect.evaluation.splits import holdout_split

        X, y = blobs
        train, _ = holdout_split(y.size, 0.7, y, 2, True)
        _, model = holdout_evaluate(ModelSpec(kind="nb"), X, y, seed=2)
        assert model.scaler is not None
        assert np.array_equal(model.scaler.minimum, X[train].min(axis=0))
        assert np.array_equal(model.scaler.maximum, X[train].max(axis=0))

    def test_unscaled_protocol_keeps_no_scaler(self, blobs):
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import holdout_evaluate

        X, y = blobs
        _, model = holdout_evaluate(ModelSpec(kind="nb"), X, y, normalize="none")
        assert model.scaler is None


class TestCrossValidate:
    def test_pooled_confusion_sums_folds(self, blobs):
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import cross_validate
        from eegaffect.evaluation.splits import stratified_kfold

        X, y = blobs
        folds = stratified_kfold(y, 5, seed=0)
        report = cross_validate(ModelSpec(kind="nb"), X, y, folds)
        assert len(report.folds) == 5
        assert report.n == 80
        total = sum(f.confusion for f in report.folds)
        assert np.array_equal(report.confusion, total)
        assert report.accuracy >= 0.9

    def test_uninformative_features_give_chance_accuracy(self):
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import cross_validate
        from eegaffect.evaluation.splits import stratified_kfold

        y = np.repeat(np.arange(4), 10)
        X = np.ones((40, 3))
        folds = stratified_kfold(y, 5, seed=0)
        report = cross_validate(ModelSpec(kind="nb"), X, y, folds)
        assert report.accuracy == pytest.approx(0.25)
        assert report.warnings

    def test_folds_must_partition_rows(self, blobs):
        from eegaffect.classify.registry import ModelSpec
        from eegaffect.evaluation.cross_validation import cross_validate

        X, y = blobs
        folds = [np.arange(0, 40), np.arange(30, 80)]
        with pytest.raises(ValueError, match="partition"):
            cross_validate(ModelSpec(kind="nb"), X, y, folds)


class TestRocPlot:
    def test_svg_has_one_curve_per_class_and_chance(self, nb_report):
        from eegaffect.evaluation.roc_plot import render_roc_svg

        svg = render_roc_svg(nb_report)
        root = ET.fromstring(svg)
        ids = {el.get("id") for el in root.iter() if el.get("id")}
        for slug in ("happy", "sad", "disgust", "peaceful", "chance"):
            assert f"roc-{slug}" in ids
        assert "HAPPY (AUC = " in svg

    def test_rendering_is_deterministic(self, nb_report):
        from eegaffect.evaluation.roc_plot import render_roc_svg

        assert render_roc_svg(nb_report) == render_roc_svg(nb_report)

    def test_report_without_roc_rejected(self):
        from eegaffect.evaluation.report import build_report
        from eegaffect.evaluation.roc_plot import render_roc_svg

        report = build_report([0, 0], [0, 0], np.eye(4)[[0, 0]], "nb", "test")
        with pytest.raises(ValueError, match="no ROC"):
            render_roc_svg(report)
