#include "ppgrr/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppgrr/detail/stats.hpp"

namespace ppgrr {

namespace {

// 0.6745 * |x - median| / MAD, the MAD-as-sigma convention.
double max_robust_z(const std::vector<double>& v) {
    const double med = detail::median(v);
    const double mad = detail::median_abs_dev(v);
    double worst = 0.0;
    for (double x : v) {
        const double dev = std::abs(x - med);
        if (mad <= 0.0) {
            if (dev > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, 0.6745 * dev / mad);
    }
    return worst;
}

}  // namespace

Segment assess_quality(Segment s, const BeatExtraction& beats, const QualityConfig& cfg) {
    const double window_s = s.signal.duration_s();

    if (beats.detection_failed) {
        s.quality = {false, "fiducial detection failed"};
        return s;
    }

    const double z = max_robust_z(s.signal.samples);
    if (z > cfg.spike_z) {
        s.quality = {false, "spike (robust z " + std::to_string(z) + ")"};
        return s;
    }

    const double n_peaks = static_cast<double>(beats.peaks.size());
    const double lo = window_s * cfg.min_hr_bpm / 60.0;
    const double hi = window_s * cfg.max_hr_bpm / 60.0;
    if (n_peaks < lo || n_peaks > hi) {
        s.quality = {false, "beat count " + std::to_string(beats.peaks.size()) + " outside plausibility band"};
        return s;
    }

    for (std::size_t j = 1; j < beats.peaks.size(); ++j) {
        const double ibi = static_cast<double>(beats.peaks[j] - beats.peaks[j - 1]) / s.signal.fs;
        if (ibi < cfg.ibi_min_s || ibi > cfg.ibi_max_s) {
            s.quality = {false, "inter-beat interval " + std::to_string(ibi) + " s out of range"};
            return s;
        }
    }

    if (beats.attempted > 0) {
        const double frac = static_cast<double>(beats.failures) / static_cast<double>(beats.attempted);
        if (frac > cfg.max_fiducial_failure_frac) {
            s.quality = {false, "fiducial failure on " + std::to_string(beats.failures) + "/" +
                                    std::to_string(beats.attempted) + " beats"};
            return s;
        }
    }

    s.quality = {true, ""};
    return s;
}

}  // namespace ppgrr
