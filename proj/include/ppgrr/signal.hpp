#pragma once

#include <optional>
#include <vector>

#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Cuts non-overlapping (or strided) windows of round(window_s*fs) samples.
/// A trailing partial window is dropped. When a reference RR series is given,
/// each segment carries the mean reference over its window.
/// Throws std::invalid_argument when the recording is shorter than one window.
std::vector<Segment> segment_windows(const TimeSeries& x, double window_s = 32.0,
                                     double stride_s = 32.0,
                                     const std::optional<TimeSeries>& reference_rr = std::nullopt,
                                     const std::string& subject_id = "");

/// Forward-backward low-pass Butterworth filter (cascaded biquads, run once
/// forward and once time-reversed, so the magnitude response is squared and
/// the net phase is zero). Edge transients are controlled by endpoint-
/// reflected padding of length 3 * order * (fs / cutoff) samples, trimmed
/// after filtering. Output length equals input length.
TimeSeries butterworth_zero_phase(const TimeSeries& x, const FilterSpec& spec);

/// n-th derivative (n in {1,2}) by central differences scaled by fs^n, with
/// one-sided differences at the endpoints. Length preserved.
TimeSeries derivative(const TimeSeries& x, int n);

}  // namespace ppgrr
