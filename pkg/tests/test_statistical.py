"""Tests for the statistical window descriptors and the 56-column matrix."""

import numpy as np
import pytest


class TestDescriptors:
    def test_mean_median_rms(self):
        from eegaffect.features.statistical import mean, median, rms

        assert mean([1, 2, 3, 6]) == 3.0
        assert median([1, 2, 3, 6]) == 2.5
        assert rms([3, 4]) == pytest.approx(np.sqrt(12.5))

    def test_std_uses_population_denominator(self):
        from eegaffect.features.statistical import std

        assert std([1, 3]) == 1.0

    def test_constant_window_has_zero_spread(self):
        from eegaffect.features.statistical import entropy, kurtosis, skewness, std

        x = [4.2] * 10
        assert std(x) == 0.0
        assert skewness(x) == 0.0
        assert kurtosis(x) == 0.0
        assert entropy(x) == 0.0

    def test_skewness_known_value(self):
        from eegaffect.features.statistical import skewness

        assert skewness([0, 0, 0, 1]) == pytest.approx(2 / np.sqrt(3))

    def test_symmetric_window_has_zero_skew(self):
        from eegaffect.features.statistical import skewness

        assert skewness([-2, -1, 0, 1, 2]) == pytest.approx(0.0, abs=1e-15)

    def test_kurtosis_is_unnormalized(self):
        from eegaffect.features.statistical import kurtosis

        # E(s^4) - 3 E(s^2)^2 = 1 - 3
        assert kurtosis([-1, 1, -1, 1]) == pytest.approx(-2.0)
        assert kurtosis([-2, 2, -2, 2]) == pytest.approx(16 - 3 * 16)

    def test_entropy_of_two_values_is_one_bit(self):
        from eegaffect.features.statistical import entropy

        assert entropy([0.0, 1.0]) == pytest.approx(1.0)

    def test_entropy_of_sixteen_spread_values_is_four_bits(self):
        from eegaffect.features.statistical import entropy

        assert entropy(np.arange(16.0)) == pytest.approx(4.0)

    def test_entropy_is_shift_invariant(self):
        from eegaffect.features.statistical import entropy

        x = np.random.default_rng(0).normal(size=60)
        assert entropy(x + 10.0) == pytest.approx(entropy(x))

    @pytest.mark.parametrize("shift", [-5.0, 0.5, 100.0])
    @pytest.mark.parametrize("name", ["std", "skewness", "kurtosis", "entropy"])
    def test_spread_and_shape_are_shift_invariant(self, name, shift):
        from eegaffect.features import statistical

        measure = getattr(statistical, name)
        rng = np.random.default_rng(11)
        for _ in range(20):
            x = rng.lognormal(size=60)
            expected = measure(x)
            assert measure(x + shift) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("scale", [-3.0, -0.5, 0.25, 2.0])
    def test_std_skewness_kurtosis_follow_scale(self, scale):
        from eegaffect.features.statistical import kurtosis, skewness, std

        rng = np.random.default_rng(12)
        for _ in range(20):
            x = rng.lognormal(size=60)
            assert std(scale * x) == pytest.approx(abs(scale) * std(x), rel=1e-9)
            assert skewness(scale * x) == pytest.approx(
                np.sign(scale) * skewness(x), rel=1e-9
            )
            assert kurtosis(scale * x) == pytest.approx(
                scale**4 * kurtosis(x), rel=1e-9
            )

    def test_window_stats_needs_two_values(self):
        from eegaffect.features.statistical import window_stats

        with pytest.raises(ValueError, match="at least 2"):
            window_stats([1.0])

    def test_window_stats_order(self):
        from eegaffect.features.statistical import STAT_NAMES

        assert STAT_NAMES == (
            "mean",
            "median",
            "std",
            "rms",
            "skewness",
            "kurtosis",
            "entropy",
        )


class TestExtractStatFeatures:
    @pytest.fixture(scope="class")
    def dataset(self):
        """Three synthetic participants."""
        from eegaffect.data.synth import SynthConfig, generate_dataset

        return generate_dataset(SynthConfig(participants=3, seed=11))

    def test_shape_and_names(self, dataset):
        from eegaffect.features.statistical import extract_stat_features

        fm = extract_stat_features(dataset)
        assert fm.shape == (12, 56)
        assert fm.kind == "statistical"
        assert fm.column_names[0] == "stat:delta:mean"
        assert fm.column_names[-1] == "stat:gammaMid:entropy"

    def test_rows_follow_recordings(self, dataset):
        from eegaffect.data.models import Band
        from eegaffect.features.statistical import extract_stat_features

        fm = extract_stat_features(dataset)
        rec = dataset.recordings[5]
        j = fm.column_names.index("stat:betaLow:mean")
        assert fm.values[5, j] == pytest.approx(rec.band(Band.BETA_LOW).mean())
        assert fm.labels[5] == int(rec.label)
        assert fm.participant_ids[5] == rec.participant_id

    def test_worker_count_does_not_change_output(self, dataset):
        from eegaffect.features.statistical import extract_stat_features

        one = extract_stat_features(dataset, threads=1)
        two = extract_stat_features(dataset, threads=2)
        assert np.array_equal(one.values, two.values)
