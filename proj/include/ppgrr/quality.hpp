#pragma once

#include "ppgrr/fiducials.hpp"
#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Thresholds for segment screening. Defaults assume a resting adult.
struct QualityConfig {
    double min_hr_bpm = 30.0;   ///< beat-count plausibility band, lower edge
    double max_hr_bpm = 220.0;  ///< and upper edge
    double spike_z = 8.0;       ///< robust z-score (median/MAD) spike limit
    double ibi_min_s = 0.27;    ///< inter-beat interval band
    double ibi_max_s = 2.0;
    double max_fiducial_failure_frac = 0.10;
};

/// Screens one segment given its beat-detection outcome. Rules, in the order
/// they are reported: fiducial detection failed outright; a spike (robust
/// z-score above spike_z); beat count outside the heart-rate plausibility
/// band; an inter-beat interval outside [ibi_min_s, ibi_max_s]; landmark
/// failures on more than max_fiducial_failure_frac of the beats.
/// Returns the segment with `quality` set; never throws on content.
Segment assess_quality(Segment s, const BeatExtraction& beats, const QualityConfig& cfg = {});

}  // namespace ppgrr
