"""Tests for FFT, STFT, Haar DWT, DCT-II and the Wigner-Ville distribution."""

import numpy as np
import pytest


class TestFft:
    def test_cosine_peaks_at_its_bin_and_mirror(self):
        from eegaffect.features.transforms import fft

        n = 16
        x = np.cos(2 * np.pi * 2 * np.arange(n) / n)
        mag = fft(x).magnitude
        assert mag[2] == pytest.approx(8.0)
        assert mag[14] == pytest.approx(8.0)
        others = np.delete(mag, [2, 14])
        assert np.allclose(others, 0.0, atol=1e-12)

    def test_matches_reference_dft(self):
        from eegaffect.features.transforms import fft

        x = np.random.default_rng(1).normal(size=64)
        assert np.allclose(fft(x).bins, np.fft.fft(x))

    def test_inverse_recovers_signal(self):
        from eegaffect.features.transforms import fft, ifft

        x = np.random.default_rng(2).normal(size=32)
        assert np.allclose(ifft(fft(x)).real, x)

    def test_transforms_last_axis_of_a_stack(self):
        from eegaffect.features.transforms import fft

        x = np.random.default_rng(3).normal(size=(3, 8))
        assert np.allclose(fft(x).bins, np.fft.fft(x, axis=-1))

    def test_frequencies_follow_sample_rate(self):
        from eegaffect.features.transforms import fft

        spectrum = fft(np.zeros(8), sample_rate=4.0)
        assert spectrum.frequencies.tolist() == [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]

    @pytest.mark.parametrize("n", [1, 3, 60])
    def test_rejects_non_power_of_two(self, n):
        from eegaffect.features.transforms import fft

        with pytest.raises(ValueError, match="power of two"):
            fft(np.zeros(n))

    def test_padding_sixty_to_sixty_four(self):
        from eegaffect.features.transforms import pad_to_power_of_two

        padded = pad_to_power_of_two(np.ones(60))
        assert padded.shape == (64,)
        assert padded[60:].tolist() == [0.0] * 4
        assert pad_to_power_of_two(np.ones(64)).shape == (64,)


class TestStft:
    def test_frame_and_bin_counts(self):
        from eegaffect.features.transforms import stft

        spec = stft(np.random.default_rng(4).normal(size=60))
        assert spec.frames.shape == (6, 9)

    def test_short_signal_rejected(self):
        from eegaffect.features.transforms import stft

        with pytest.raises(ValueError, match="shorter than window"):
            stft(np.ones(10))

    def test_constant_signal_has_no_ac_content(self):
        from eegaffect.features.transforms import stft

        spec = stft(np.ones(32))
        assert np.all(spec.frames[:, 0] > 0)
        assert np.allclose(spec.frames[:, 2:], 0.0, atol=1e-12)


class TestHaar:
    def test_pair_of_equal_values(self):
        from eegaffect.features.transforms import dwt_haar

        coeffs = dwt_haar([1.0, 1.0], 1)
        assert coeffs.approx[0] == pytest.approx(np.sqrt(2))
        assert coeffs.details[0][0] == pytest.approx(0.0)

    def test_perfect_reconstruction_and_energy(self):
        from eegaffect.features.transforms import dwt_haar, idwt_haar

        x = np.random.default_rng(5).normal(size=64)
        coeffs = dwt_haar(x, 3)
        assert coeffs.levels == 3
        assert coeffs.approx.size == 8
        energy = np.sum(coeffs.approx**2) + sum(np.sum(d**2) for d in coeffs.details)
        assert energy == pytest.approx(np.sum(x**2))
        assert np.allclose(idwt_haar(coeffs), x)

    def test_length_must_divide(self):
        from eegaffect.features.transforms import dwt_haar

        with pytest.raises(ValueError, match="not divisible"):
            dwt_haar(np.ones(60), 3)


class TestDct:
    def test_constant_signal_is_all_dc(self):
        from eegaffect.features.transforms import dct2

        c = dct2(np.full(16, 2.0))
        assert c[0] == pytest.approx(2.0 * 4.0)
        assert np.allclose(c[1:], 0.0, atol=1e-12)

    def test_orthonormal_energy(self):
        from eegaffect.features.transforms import dct2

        x = np.random.default_rng(6).normal(size=60)
        assert np.sum(dct2(x) ** 2) == pytest.approx(np.sum(x**2))


class TestWvd:
    def test_time_marginal(self):
        from eegaffect.features.transforms import wvd

        x = np.random.default_rng(7).normal(size=16)
        w = wvd(x).values
        assert w.shape == (16, 16)
        assert np.allclose(w.sum(axis=1), 16 * x**2)

    def test_rejects_odd_length(self):
        from eegaffect.features.transforms import wvd

        with pytest.raises(ValueError):
            wvd(np.ones(60))
