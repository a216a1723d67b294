#include "ppgrr/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppgrr {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_radix2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Psd welch_psd(const std::vector<double>& x, double fs, double window_s, int pad_factor) {
    if (x.empty()) throw std::invalid_argument("welch_psd: empty input");
    if (!(fs > 0.0)) throw std::invalid_argument("welch_psd: fs must be positive");
    if (pad_factor < 1) throw std::invalid_argument("welch_psd: pad_factor must be >= 1");

    std::size_t nper = static_cast<std::size_t>(std::llround(window_s * fs));
    nper = std::min(std::max<std::size_t>(nper, 2), x.size());
    const std::size_t hop = std::max<std::size_t>(nper / 2, 1);

    std::size_t nfft = 1;
    while (nfft < nper) nfft <<= 1;
    nfft *= static_cast<std::size_t>(pad_factor);

    std::vector<double> window(nper);
    double wss = 0.0;  // sum of squared window values
    for (std::size_t i = 0; i < nper; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(nper - 1));
        wss += window[i] * window[i];
    }

    const std::size_t nbins = nfft / 2 + 1;
    std::vector<double> acc(nbins, 0.0);
    std::size_t chunks = 0;
    std::vector<std::complex<double>> buf;
    for (std::size_t start = 0; start + nper <= x.size(); start += hop) {
        double m = 0.0;
        for (std::size_t i = 0; i < nper; ++i) m += x[start + i];
        m /= static_cast<double>(nper);

        buf.assign(nfft, {0.0, 0.0});
        for (std::size_t i = 0; i < nper; ++i) buf[i] = (x[start + i] - m) * window[i];
        fft_radix2(buf);
        for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(buf[k]);
        ++chunks;
        if (start + nper == x.size()) break;
    }
    if (chunks == 0) throw std::logic_error("welch_psd: no chunks formed");

    Psd out;
    out.freq.resize(nbins);
    out.power.resize(nbins);
    const double scale = 1.0 / (fs * wss * static_cast<double>(chunks));
    for (std::size_t k = 0; k < nbins; ++k) {
        out.freq[k] = fs * static_cast<double>(k) / static_cast<double>(nfft);
        // One-sided density: interior bins carry both halves of the spectrum.
        const double one_sided = (k == 0 || k == nbins - 1) ? 1.0 : 2.0;
        out.power[k] = acc[k] * scale * one_sided;
    }
    return out;
}

}  // namespace ppgrr
