#pragma once

#include <cstdint>

#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Parameters of the synthetic PPG generator. The three respiratory
/// modulations (beat-period, per-beat amplitude, additive baseline) all run
/// at rr_bpm.
struct SynthSpec {
    double fs = 500.0;
    double duration_s = 64.0;
    double hr_bpm = 75.0;
    double rr_bpm = 15.0;
    double mod_depth_amp = 0.0;   ///< in [0,1): per-beat amplitude modulation depth
    double mod_depth_freq = 0.0;  ///< in [0,0.5): beat-period modulation depth
    double baseline_amp = 0.0;    ///< additive respiratory baseline amplitude
    double noise_sd = 0.0;        ///< white Gaussian noise standard deviation
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument when a SynthSpec invariant is violated
/// (rr in [4,60], hr in [40,180], cardiac rate above twice the respiratory
/// rate, depths and amplitudes in range).
void validate(const SynthSpec& spec);

struct SynthResult {
    TimeSeries signal;
    double true_rr = 0.0;  ///< breaths/min
};

/// Deterministic beat train of two-Gaussian pulses (systolic + dicrotic)
/// with respiratory frequency/amplitude/baseline modulation plus white noise.
SynthResult generate_ppg(const SynthSpec& spec);

}  // namespace ppgrr
