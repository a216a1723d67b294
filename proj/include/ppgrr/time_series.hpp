#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ppgrr {

/// Uniformly sampled real-valued signal.
struct TimeSeries {
    std::vector<double> samples;
    double fs = 0.0;  ///< sampling rate in Hz
    double t0 = 0.0;  ///< time of samples[0] in seconds

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return fs > 0.0 ? static_cast<double>(samples.size()) / fs : 0.0; }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
};

/// Throws std::invalid_argument unless samples are nonempty, fs > 0 and every sample is finite.
void validate(const TimeSeries& x, const std::string& context);

/// Screening outcome for one segment. `reason` is empty when accepted.
struct QualityVerdict {
    bool accepted = false;
    std::string reason = "unscreened";
};

/// One fixed-length analysis window cut from a recording.
struct Segment {
    TimeSeries signal;
    std::optional<double> reference_rr;  ///< breaths/min, mean of the reference over the window
    QualityVerdict quality;
    std::string subject_id;
};

struct FilterSpec {
    enum class Kind { LowPassButterworth };
    int order = 6;
    double cutoff_hz = 25.0;
    Kind kind = Kind::LowPassButterworth;
};

/// Throws std::invalid_argument unless the spec is usable at sampling rate fs
/// (even order >= 2, 0 < cutoff < fs/2).
void validate(const FilterSpec& spec, double fs);

}  // namespace ppgrr
