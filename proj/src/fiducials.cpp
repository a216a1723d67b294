#include "ppgrr/fiducials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "ppgrr/signal.hpp"

namespace ppgrr {

namespace {

constexpr double kThresholdQuantile = 0.75;
constexpr double kThresholdWindowS = 2.0;
constexpr double kThresholdHopS = 0.25;
constexpr double kMinPeakDistanceS = 0.27;

// Rolling 75th percentile of a centered 2-s window, evaluated on a 0.25-s
// hop grid and linearly interpolated in between.
std::vector<double> rolling_percentile_threshold(const std::vector<double>& x, double fs) {
    const std::size_t n = x.size();
    const std::size_t half = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.5 * kThresholdWindowS * fs)));
    const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(kThresholdHopS * fs)));

    std::vector<std::size_t> centers;
    for (std::size_t c = 0; c < n; c += hop) centers.push_back(c);
    if (centers.back() != n - 1) centers.push_back(n - 1);

    std::vector<double> at_centers(centers.size());
    std::vector<double> buf;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        const std::size_t c = centers[k];
        const std::size_t lo = c >= half ? c - half : 0;
        const std::size_t hi = std::min(n, c + half + 1);
        buf.assign(x.begin() + lo, x.begin() + hi);
        const double pos = kThresholdQuantile * static_cast<double>(buf.size() - 1);
        const std::size_t ilo = static_cast<std::size_t>(pos);
        std::nth_element(buf.begin(), buf.begin() + ilo, buf.end());
        double q = buf[ilo];
        if (ilo + 1 < buf.size()) {
            const double next = *std::min_element(buf.begin() + ilo + 1, buf.end());
            q += (pos - static_cast<double>(ilo)) * (next - q);
        }
        at_centers[k] = q;
    }

    std::vector<double> thr(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (seg + 1 < centers.size() && centers[seg + 1] < i) ++seg;
        if (seg + 1 >= centers.size()) {
            thr[i] = at_centers.back();
            continue;
        }
        const double span = static_cast<double>(centers[seg + 1] - centers[seg]);
        const double w = span > 0.0 ? (static_cast<double>(i) - static_cast<double>(centers[seg])) / span : 0.0;
        thr[i] = at_centers[seg] + w * (at_centers[seg + 1] - at_centers[seg]);
    }
    return thr;
}

// First strict local maximum of v in open index range (lo, hi); the plateau
// start counts as the maximum. Returns nullopt when there is none.
std::optional<std::size_t> first_local_max(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i + 1 <= hi && i + 1 < v.size(); ++i) {
        if (i >= hi) break;
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> first_local_min(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo + 1; i + 1 <= hi && i + 1 < v.size(); ++i) {
        if (i >= hi) break;
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) return i;
    }
    return std::nullopt;
}

// Trapezoidal integral of (x - baseline) over [lo, hi], in signal units * s.
double area_above(const std::vector<double>& x, std::size_t lo, std::size_t hi, double baseline, double fs) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        acc += 0.5 * ((x[i] - baseline) + (x[i + 1] - baseline));
    }
    return acc / fs;
}

// Sub-sample crossing times of the level L on the rising side (foot..peak)
// and falling side (peak..next foot), nearest the peak. Returns width in
// samples, or nullopt when either crossing is missing.
std::optional<double> width_at_level(const std::vector<double>& x, std::size_t foot,
                                     std::size_t peak, std::size_t foot_next, double level) {
    double rise = -1.0, fall = -1.0;
    for (std::size_t i = peak; i-- > foot;) {
        if (x[i] < level) {
            rise = static_cast<double>(i) + (level - x[i]) / (x[i + 1] - x[i]);
            break;
        }
    }
    for (std::size_t i = peak + 1; i <= foot_next; ++i) {
        if (x[i] < level) {
            fall = static_cast<double>(i - 1) + (x[i - 1] - level) / (x[i - 1] - x[i]);
            break;
        }
    }
    if (rise < 0.0 || fall < 0.0) return std::nullopt;
    return fall - rise;
}

}  // namespace

std::vector<std::size_t> detect_beats(const TimeSeries& x) {
    validate(x, "detect_beats");
    const auto& s = x.samples;
    const std::size_t n = s.size();
    if (n < 3) return {};

    const auto thr = rolling_percentile_threshold(s, x.fs);

    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i] > s[i - 1] && s[i] >= s[i + 1] && s[i] > thr[i]) candidates.push_back(i);
    }

    // Greedy minimum-distance pruning, higher peaks first; index breaks ties.
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (s[candidates[a]] != s[candidates[b]]) return s[candidates[a]] > s[candidates[b]];
        return candidates[a] < candidates[b];
    });
    const double min_dist = kMinPeakDistanceS * x.fs;
    std::vector<std::size_t> kept;
    for (std::size_t oi : order) {
        const std::size_t c = candidates[oi];
        bool ok = true;
        for (std::size_t k : kept) {
            if (std::abs(static_cast<double>(c) - static_cast<double>(k)) < min_dist) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

BeatExtraction extract_beat_fiducials(const TimeSeries& x, const TimeSeries& d1,
                                      const TimeSeries& d2, const std::vector<std::size_t>& peaks) {
    validate(x, "extract_beat_fiducials");
    if (d1.samples.size() != x.samples.size() || d2.samples.size() != x.samples.size())
        throw std::invalid_argument("extract_beat_fiducials: derivative length mismatch");

    BeatExtraction out;
    out.peaks = peaks;
    if (peaks.size() < 3) {
        out.detection_failed = peaks.size() < 3;
        return out;
    }

    const auto& s = x.samples;
    const double fs = x.fs;

    // Feet: argmin strictly between consecutive peaks (first index on ties).
    std::vector<std::size_t> feet(peaks.size(), 0);
    for (std::size_t j = 1; j < peaks.size(); ++j) {
        std::size_t best = peaks[j - 1] + 1;
        for (std::size_t i = peaks[j - 1] + 1; i < peaks[j]; ++i) {
            if (s[i] < s[best]) best = i;
        }
        feet[j] = best;
    }

    for (std::size_t j = 1; j + 1 < peaks.size(); ++j) {
        ++out.attempted;
        const std::size_t i_foot = feet[j];
        const std::size_t i_sys = peaks[j];
        const std::size_t i_next = feet[j + 1];
        if (!(i_foot < i_sys && i_sys < i_next)) {
            ++out.failures;
            continue;
        }

        BeatFiducials b;
        b.i_foot = i_foot;
        b.i_sys = i_sys;
        b.i_foot_next = i_next;
        b.sys = s[i_sys];
        b.amp_foot = s[i_foot];
        b.x = b.sys - b.amp_foot;
        if (!(b.x > 0.0)) {
            ++out.failures;
            continue;
        }
        b.t1 = static_cast<double>(i_sys - i_foot) / fs;
        b.tpi = static_cast<double>(i_next - i_foot) / fs;
        b.tpp = static_cast<double>(peaks[j + 1] - peaks[j]) / fs;
        b.A1 = area_above(s, i_foot, i_sys, b.amp_foot, fs);
        b.A2 = area_above(s, i_sys, i_next, s[i_next], fs);

        const auto w25 = width_at_level(s, i_foot, i_sys, i_next, b.amp_foot + 0.25 * b.x);
        const auto w50 = width_at_level(s, i_foot, i_sys, i_next, b.amp_foot + 0.50 * b.x);
        const auto w75 = width_at_level(s, i_foot, i_sys, i_next, b.amp_foot + 0.75 * b.x);
        if (!w25 || !w50 || !w75) {
            ++out.failures;
            continue;
        }
        b.w25 = *w25 / fs;
        b.w50 = *w50 / fs;
        b.w75 = *w75 / fs;

        const auto iv1 = first_local_max(d1.samples, i_foot, i_next);
        if (!iv1) {
            ++out.failures;
            continue;
        }
        const auto iv2 = first_local_min(d1.samples, *iv1, i_next);
        const auto ia1 = first_local_max(d2.samples, i_foot, i_next);
        if (!iv2 || !ia1) {
            ++out.failures;
            continue;
        }
        const auto ia2 = first_local_min(d2.samples, *ia1, i_next);
        if (!ia2) {
            ++out.failures;
            continue;
        }
        b.v1 = d1.samples[*iv1];
        b.tv1 = static_cast<double>(*iv1 - i_foot) / fs;
        b.v2 = d1.samples[*iv2];
        b.tv2 = static_cast<double>(*iv2 - i_foot) / fs;
        b.a1 = d2.samples[*ia1];
        b.ta1 = static_cast<double>(*ia1 - i_foot) / fs;
        b.a2 = d2.samples[*ia2];
        b.ta2 = static_cast<double>(*ia2 - i_foot) / fs;

        out.beats.push_back(b);
    }
    return out;
}

BeatExtraction analyze_beats(const TimeSeries& x, const TimeSeries& d1, const TimeSeries& d2) {
    const auto peaks = detect_beats(x);
    auto out = extract_beat_fiducials(x, d1, d2, peaks);
    out.detection_failed = peaks.size() < 3;
    return out;
}

}  // namespace ppgrr
