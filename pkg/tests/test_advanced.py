"""Tests for the transform summaries, the 64-column matrix and fusion."""

import numpy as np
import pytest


@pytest.fixture(scope="module")
def dataset():
    """Two synthetic participants, eight recordings."""
    from eegaffect.data.synth import SynthConfig, generate_dataset

    return generate_dataset(SynthConfig(participants=2, seed=5))


class TestAdvancedSummaries:
    def test_constant_series_has_fixed_values(self):
        from eegaffect.features.advanced import advanced_summaries

        s = advanced_summaries(np.full(60, 3.0))
        assert s.stft_entropy == 0.0
        assert s.wvd_entropy == 0.0
        assert s.fft_dominance == 0.0
        assert s.dct_compaction == 1.0
        assert s.dwt_ratio < -20

    def test_values_are_in_range(self):
        from eegaffect.features.advanced import advanced_summaries

        x = np.random.default_rng(8).lognormal(size=60)
        s = advanced_summaries(x)
        assert 0 < s.dct_compaction <= 1
        assert 0 < s.fft_dominance <= 1
        assert s.stft_entropy > 0
        assert s.mix_a == pytest.approx(s.fft_dominance * s.dct_compaction)
        assert s.mix_b == pytest.approx(s.stft_entropy - s.wvd_entropy)
        assert s.mix_c == pytest.approx(s.dwt_ratio * s.fft_dominance)

    def test_scaling_the_series_leaves_summaries_unchanged(self):
        from eegaffect.features.advanced import advanced_summaries

        x = np.random.default_rng(9).lognormal(size=60)
        assert np.allclose(advanced_summaries(x), advanced_summaries(25.0 * x))

    def test_single_tone_dominates_spectrum(self):
        from eegaffect.features.advanced import advanced_summaries

        tone = np.sin(2 * np.pi * 8 * np.arange(60) / 64)
        noise = np.random.default_rng(10).normal(size=60)
        assert advanced_summaries(tone).fft_dominance > advanced_summaries(
            noise
        ).fft_dominance

    def test_white_noise_stft_entropy_is_near_uniform(self):
        from eegaffect.features.advanced import advanced_summaries

        rng = np.random.default_rng(13)
        values = [
            advanced_summaries(rng.normal(size=60)).stft_entropy for _ in range(100)
        ]
        assert np.mean(values) == pytest.approx(np.log2(9), rel=0.1)

    def test_non_finite_input_rejected(self):
        from eegaffect.features.advanced import advanced_summaries

        with pytest.raises(ValueError, match="finite"):
            advanced_summaries([1.0, np.nan, 2.0])


class TestExtractAdvancedFeatures:
    def test_shape_and_names(self, dataset):
        from eegaffect.features.advanced import extract_advanced_features

        fm = extract_advanced_features(dataset)
        assert fm.shape == (8, 64)
        assert fm.kind == "advanced"
        assert fm.column_names[:2] == ("adv:delta:stft_entropy", "adv:delta:dwt_ratio")

    def test_worker_count_does_not_change_output(self, dataset):
        from eegaffect.features.advanced import extract_advanced_features

        one = extract_advanced_features(dataset, threads=1)
        two = extract_advanced_features(dataset, threads=2)
        assert np.array_equal(one.values, two.values)


class TestFuse:
    def test_fused_matrix_puts_statistical_block_first(self, dataset):
        from eegaffect.features.advanced import extract_advanced_features, fuse
        from eegaffect.features.statistical import extract_stat_features

        stat = extract_stat_features(dataset)
        adv = extract_advanced_features(dataset)
        fused = fuse(stat, adv)
        assert fused.shape == (8, 120)
        assert fused.kind == "fused"
        assert np.array_equal(fused.values[:, :56], stat.values)
        assert np.array_equal(fused.values[:, 56:], adv.values)

    def test_wrong_kinds_rejected(self, dataset):
        from eegaffect.features.advanced import fuse
        from eegaffect.features.statistical import extract_stat_features

        stat = extract_stat_features(dataset)
        with pytest.raises(ValueError, match="statistical \\+ advanced"):
            fuse(stat, stat)

    def test_misaligned_rows_rejected(self, dataset):
        from eegaffect.data.models import RawDataset
        from eegaffect.features.advanced import extract_advanced_features, fuse
        from eegaffect.features.statistical import extract_stat_features

        stat = extract_stat_features(dataset)
        adv = extract_advanced_features(RawDataset(dataset.recordings[:4]))
        with pytest.raises(ValueError, match="Row count mismatch"):
            fuse(stat, adv)

    def test_fuse_selected_gives_derived_matrix(self, dataset):
        from eegaffect.features.advanced import (
            extract_advanced_features,
            fuse_selected,
        )
        from eegaffect.features.statistical import extract_stat_features

        left = extract_stat_features(dataset).select_columns([0, 1])
        right = extract_advanced_features(dataset).select_columns([3])
        out = fuse_selected(left, right)
        assert out.kind == "derived"
        assert out.column_names == (
            "stat:delta:mean",
            "stat:delta:median",
            "adv:delta:fft_dominance",
        )
