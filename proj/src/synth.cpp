#include "ppgrr/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace ppgrr {

namespace {

// Beat template constants: Gaussian centers at 30% / 65% of the period,
// widths 12% / 18%, amplitude ratio 1 : 0.35. These give a clear systolic
// peak, a dicrotic shoulder and well-separated derivative extrema.
constexpr double kSysCenter = 0.30;
constexpr double kDicCenter = 0.65;
constexpr double kSysWidth = 0.12;
constexpr double kDicWidth = 0.18;
constexpr double kDicAmp = 0.35;

}  // namespace

void validate(const SynthSpec& spec) {
    if (!(spec.fs > 0.0)) throw std::invalid_argument("SynthSpec: fs must be positive");
    if (!(spec.duration_s > 0.0)) throw std::invalid_argument("SynthSpec: duration must be positive");
    if (spec.rr_bpm < 4.0 || spec.rr_bpm > 60.0)
        throw std::invalid_argument("SynthSpec: rr_bpm outside [4, 60]");
    if (spec.hr_bpm < 40.0 || spec.hr_bpm > 180.0)
        throw std::invalid_argument("SynthSpec: hr_bpm outside [40, 180]");
    if (!(spec.hr_bpm / 60.0 > 2.0 * spec.rr_bpm / 60.0))
        throw std::invalid_argument("SynthSpec: cardiac rate must exceed twice the respiratory rate");
    if (spec.mod_depth_amp < 0.0 || spec.mod_depth_amp >= 1.0)
        throw std::invalid_argument("SynthSpec: mod_depth_amp outside [0,1)");
    if (spec.mod_depth_freq < 0.0 || spec.mod_depth_freq >= 0.5)
        throw std::invalid_argument("SynthSpec: mod_depth_freq outside [0,0.5)");
    if (spec.baseline_amp < 0.0) throw std::invalid_argument("SynthSpec: baseline_amp must be >= 0");
    if (spec.noise_sd < 0.0) throw std::invalid_argument("SynthSpec: noise_sd must be >= 0");
}

SynthResult generate_ppg(const SynthSpec& spec) {
    validate(spec);

    const double f_resp = spec.rr_bpm / 60.0;
    const double base_period = 60.0 / spec.hr_bpm;
    const std::size_t n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.fs));

    // Beat onsets: each period is stretched by the respiratory phase at its
    // own onset. Start one beat early and run one beat past the end so edge
    // samples see complete pulses.
    struct Beat {
        double onset;
        double period;
        double amp;
    };
    std::vector<Beat> beats;
    double t = -base_period;
    while (t < spec.duration_s + base_period) {
        const double period =
            base_period * (1.0 + spec.mod_depth_freq *
                                     std::sin(2.0 * std::numbers::pi * f_resp * t));
        const double amp =
            1.0 + spec.mod_depth_amp * std::sin(2.0 * std::numbers::pi * f_resp * t);
        beats.push_back({t, period, amp});
        t += period;
    }

    TimeSeries sig;
    sig.samples.assign(n, 0.0);
    sig.fs = spec.fs;
    sig.t0 = 0.0;

    for (const Beat& b : beats) {
        const double s_mu = b.onset + kSysCenter * b.period;
        const double d_mu = b.onset + kDicCenter * b.period;
        const double s_sd = kSysWidth * b.period;
        const double d_sd = kDicWidth * b.period;
        // 8-sigma support keeps the truncation error below 1e-12 of the pulse.
        const double lo = b.onset - 8.0 * d_sd;
        const double hi = b.onset + b.period + 8.0 * d_sd;
        const std::size_t i0 = lo <= 0.0 ? 0 : static_cast<std::size_t>(lo * spec.fs);
        const std::size_t i1 = hi >= spec.duration_s
                                   ? n
                                   : static_cast<std::size_t>(hi * spec.fs) + 1;
        for (std::size_t i = i0; i < i1 && i < n; ++i) {
            const double ti = static_cast<double>(i) / spec.fs;
            const double zs = (ti - s_mu) / s_sd;
            const double zd = (ti - d_mu) / d_sd;
            sig.samples[i] += b.amp * (std::exp(-0.5 * zs * zs) + kDicAmp * std::exp(-0.5 * zd * zd));
        }
    }

    if (spec.baseline_amp > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ti = static_cast<double>(i) / spec.fs;
            sig.samples[i] += spec.baseline_amp * std::sin(2.0 * std::numbers::pi * f_resp * ti);
        }
    }

    if (spec.noise_sd > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::normal_distribution<double> noise(0.0, spec.noise_sd);
        for (double& v : sig.samples) v += noise(rng);
    }

    return SynthResult{std::move(sig), spec.rr_bpm};
}

}  // namespace ppgrr
