"""Time-frequency transforms applied to one band-power series.

- ``fft`` / ``ifft``: iterative radix-2 decimation in time. Works on the last
  axis, so a whole stack of frames is transformed in one call.
- ``stft``: Hann-windowed frames (16 samples, hop 8) through ``fft``.
- ``dwt_haar`` / ``idwt_haar``: orthonormal Haar analysis/synthesis bank.
- ``dct2``: orthonormal DCT-II.
- ``wvd``: discrete pseudo Wigner-Ville distribution with lags truncated to the
  valid overlap of the signal with its time reverse.

Forward FFT is unnormalized, the inverse carries the 1/N.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Final

import numpy as np
import scipy.fft
import scipy.signal
from numpy.typing import ArrayLike, NDArray

STFT_WINDOW: Final[int] = 16
STFT_HOP: Final[int] = 8


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def pad_to_power_of_two(x: ArrayLike) -> NDArray[np.float64]:
    """Zero-pad the last axis to the next power of two (60 -> 64)."""
    arr = np.asarray(x, dtype=np.float64)
    n = arr.shape[-1]
    target = 1 << max(n - 1, 0).bit_length()
    if target == n:
        return arr
    pad = [(0, 0)] * (arr.ndim - 1) + [(0, target - n)]
    return np.pad(arr, pad)


@lru_cache(maxsize=32)
def _bit_reversal(n: int) -> NDArray[np.intp]:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(a: NDArray[np.complex128], sign: float) -> NDArray[np.complex128]:
    n = a.shape[-1]
    out = np.ascontiguousarray(a[..., _bit_reversal(n)])
    lead = out.shape[:-1]
    half = 1
    while half < n:
        size = 2 * half
        twiddle = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(*lead, n // size, size)
        even = blocks[..., :half].copy()
        odd = blocks[..., half:] * twiddle
        blocks[..., :half] = even + odd
        blocks[..., half:] = even - odd
        half = size
    return out


@dataclass(frozen=True)
class Spectrum:
    """DFT bins along the last axis; bin k is frequency k·rate/N."""

    bins: NDArray[np.complex128]
    sample_rate: float = 1.0

    @property
    def n(self) -> int:
        return int(self.bins.shape[-1])

    @property
    def frequencies(self) -> NDArray[np.float64]:
        return np.arange(self.n) * self.sample_rate / self.n

    @property
    def magnitude(self) -> NDArray[np.float64]:
        return np.abs(self.bins)


def fft(x: ArrayLike, sample_rate: float = 1.0) -> Spectrum:
    """Forward radix-2 FFT along the last axis.

    Each stage recombines the half-length transforms of the even and odd
    samples, X[k] = E[k] + e^(−2πjk/N)·O[k].

    Raises:
        ValueError: If the last-axis length is not a power of two >= 2.
    """
    a = np.asarray(x, dtype=np.complex128)
    n = a.shape[-1] if a.ndim else 0
    if n < 2 or not is_power_of_two(n):
        raise ValueError(f"FFT length must be a power of two >= 2, got {n}")
    return Spectrum(bins=_radix2(a, -1.0), sample_rate=sample_rate)


def ifft(spectrum: Spectrum | ArrayLike) -> NDArray[np.complex128]:
    """Inverse of :func:`fft` (includes the 1/N factor)."""
    bins = spectrum.bins if isinstance(spectrum, Spectrum) else spectrum
    a = np.asarray(bins, dtype=np.complex128)
    n = a.shape[-1] if a.ndim else 0
    if n < 2 or not is_power_of_two(n):
        raise ValueError(f"FFT length must be a power of two >= 2, got {n}")
    return _radix2(a, 1.0) / n


@dataclass(frozen=True)
class Spectrogram:
    """T x F magnitude frames; F = window_len/2 + 1."""

    frames: NDArray[np.float64]
    window_len: int
    hop: int


def stft(
    x: ArrayLike, window_len: int = STFT_WINDOW, hop: int = STFT_HOP
) -> Spectrogram:
    """Short-time Fourier transform magnitude with a periodic Hann window.

    Frames start every ``hop`` samples; T = 1 + floor((len − window_len)/hop).
    Each windowed frame is zero-padded to a power of two before the FFT and
    the one-sided magnitude is kept.
    """
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size < window_len:
        raise ValueError(
            f"Signal of length {arr.size} shorter than window {window_len}"
        )
    n_frames = 1 + (arr.size - window_len) // hop
    starts = np.arange(n_frames) * hop
    segments = arr[starts[:, None] + np.arange(window_len)]
    window = scipy.signal.get_window("hann", window_len)
    spectrum = fft(pad_to_power_of_two(segments * window))
    n_bins = window_len // 2 + 1
    return Spectrogram(
        frames=spectrum.magnitude[:, :n_bins], window_len=window_len, hop=hop
    )


@dataclass(frozen=True)
class WaveletCoeffs:
    """Approximation at the deepest level plus details for levels 1..L."""

    approx: NDArray[np.float64]
    details: tuple[NDArray[np.float64], ...]

    @property
    def levels(self) -> int:
        return len(self.details)


_SQRT2: Final[float] = float(np.sqrt(2.0))


def dwt_haar(x: ArrayLike, levels: int) -> WaveletCoeffs:
    """Multi-level orthonormal Haar analysis.

    Each level convolves with the low-pass (1, 1)/√2 and high-pass (1, −1)/√2
    filters and keeps every second output.

    Raises:
        ValueError: If ``levels < 1`` or the length is not divisible by 2^levels.
    """
    approx = np.asarray(x, dtype=np.float64).ravel()
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if approx.size == 0 or approx.size % (1 << levels):
        raise ValueError(
            f"Length {approx.size} is not divisible by 2^{levels}; pad the signal"
        )
    details = []
    for _ in range(levels):
        even, odd = approx[0::2], approx[1::2]
        details.append((even - odd) / _SQRT2)
        approx = (even + odd) / _SQRT2
    return WaveletCoeffs(approx=approx, details=tuple(details))


def idwt_haar(coeffs: WaveletCoeffs) -> NDArray[np.float64]:
    """Perfect-reconstruction synthesis for :func:`dwt_haar`."""
    approx = coeffs.approx
    for detail in reversed(coeffs.details):
        rec = np.empty(2 * approx.size)
        rec[0::2] = (approx + detail) / _SQRT2
        rec[1::2] = (approx - detail) / _SQRT2
        approx = rec
    return approx


def dct2(x: ArrayLike) -> NDArray[np.float64]:
    """Orthonormal DCT-II coefficients."""
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("dct2 needs a nonempty vector")
    return np.asarray(scipy.fft.dct(arr, type=2, norm="ortho"))


@dataclass(frozen=True)
class TFMatrix:
    """N x N time-frequency matrix (rows = time, columns = frequency bin)."""

    values: NDArray[np.float64]


def wvd(x: ArrayLike) -> TFMatrix:
    """Discrete pseudo Wigner-Ville distribution.

    W[n, k] = Σ_m x[n+m]·conj(x[n−m])·e^(−2πjmk/N) over lags
    |m| <= min(n, N−1−n), so only samples that overlap when the signal is
    folded about n contribute. The real part is kept. With this unscaled DFT,
    Σ_k W[n, k] = N·|x[n]|².

    Raises:
        ValueError: If the length is not a power of two >= 2.
    """
    arr = np.asarray(x).ravel()
    n = arr.size
    if n < 2 or not is_power_of_two(n):
        raise ValueError(f"WVD length must be a power of two >= 2, got {n}")
    lags = np.arange(n)
    signed = np.where(lags < n // 2, lags, lags - n)
    t = np.arange(n)[:, None]
    limit = np.minimum(t, n - 1 - t)
    valid = np.abs(signed)[None, :] <= limit
    plus = np.clip(t + signed, 0, n - 1)
    minus = np.clip(t - signed, 0, n - 1)
    kernel = np.where(valid, arr[plus] * np.conj(arr[minus]), 0.0)
    return TFMatrix(values=fft(kernel).bins.real.copy())
