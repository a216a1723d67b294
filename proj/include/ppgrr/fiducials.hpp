#pragma once

#include <cstddef>
#include <vector>

#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Per-beat landmark set. A beat spans foot -> next foot and contains one
/// systolic peak. All time fields are in seconds measured from the beat's
/// foot; amplitude fields are in signal units.
struct BeatFiducials {
    std::size_t i_sys = 0;        ///< systolic peak index
    std::size_t i_foot = 0;       ///< preceding foot index
    std::size_t i_foot_next = 0;  ///< next foot index

    double sys = 0.0;       ///< signal at the systolic peak
    double amp_foot = 0.0;  ///< signal at the foot
    double x = 0.0;         ///< sys - amp_foot

    double t1 = 0.0;   ///< foot -> systolic peak
    double tpi = 0.0;  ///< foot -> next foot
    double tpp = 0.0;  ///< systolic peak -> next systolic peak

    double A1 = 0.0;  ///< rising area, integral of (signal - amp_foot) foot -> peak
    double A2 = 0.0;  ///< decay area, integral of (signal - next foot amplitude) peak -> next foot

    double w25 = 0.0, w50 = 0.0, w75 = 0.0;  ///< pulse widths at 25/50/75% of x

    double v1 = 0.0, tv1 = 0.0;  ///< first local max of the 1st derivative and its time
    double v2 = 0.0, tv2 = 0.0;  ///< first local min of the 1st derivative after tv1
    double a1 = 0.0, ta1 = 0.0;  ///< first local max of the 2nd derivative and its time
    double a2 = 0.0, ta2 = 0.0;  ///< first local min of the 2nd derivative after ta1
};

/// Outcome of running beat + landmark detection on one segment.
struct BeatExtraction {
    std::vector<std::size_t> peaks;    ///< detected systolic peak indices
    std::vector<BeatFiducials> beats;  ///< beats with a complete landmark set
    std::size_t attempted = 0;         ///< beats tried (peak pairs with a bounding foot)
    std::size_t failures = 0;          ///< beats dropped for an undefined landmark
    bool detection_failed = false;     ///< fewer than 3 peaks found
};

/// Systolic peak detection: strict local maxima above a rolling 75th
/// percentile threshold (2-s window), greedy minimum spacing of 0.27 s
/// resolved in favour of higher peaks. Indices ascend.
/// Fewer than 3 peaks is not an error here; callers treat it as a
/// fiducial-detection failure during quality screening.
std::vector<std::size_t> detect_beats(const TimeSeries& x);

/// Landmark extraction per consecutive peak pair. d1, d2 are the first and
/// second derivatives of x on the same grid. Beats where any landmark is
/// undefined are dropped and counted in `failures`.
BeatExtraction extract_beat_fiducials(const TimeSeries& x, const TimeSeries& d1,
                                      const TimeSeries& d2, const std::vector<std::size_t>& peaks);

/// detect_beats + extract_beat_fiducials, with the failure flag set when
/// detection yields fewer than 3 peaks.
BeatExtraction analyze_beats(const TimeSeries& x, const TimeSeries& d1, const TimeSeries& d2);

}  // namespace ppgrr
