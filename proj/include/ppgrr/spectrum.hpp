#pragma once

#include <complex>
#include <vector>

namespace ppgrr {

/// In-place radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a);

/// One-sided power spectral density estimate and its frequency grid.
struct Psd {
    std::vector<double> freq;   ///< Hz, from 0 to fs/2
    std::vector<double> power;  ///< density, signal_units^2 / Hz
};

/// Welch PSD: Hann windows of window_s seconds (clamped to the signal
/// length), 50% overlap, each chunk mean-removed and zero-padded to the next
/// power of two times pad_factor.
Psd welch_psd(const std::vector<double>& x, double fs, double window_s = 8.0, int pad_factor = 4);

}  // namespace ppgrr
