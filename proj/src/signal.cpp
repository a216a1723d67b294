#include "ppgrr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppgrr {

namespace {

struct Biquad {
    double b0, b1, b2;  // numerator (normalized)
    double a1, a2;      // denominator, a0 == 1
};

// Bilinear-transform design of an order-N Butterworth low-pass as N/2 biquads.
// Each analog conjugate pole pair s^2 + 2 sin(theta_k) s + 1 maps to one section.
std::vector<Biquad> design_butterworth_lp(int order, double cutoff_hz, double fs) {
    const double c = 1.0 / std::tan(std::numbers::pi * cutoff_hz / fs);  // prewarped
    std::vector<Biquad> sections;
    sections.reserve(order / 2);
    for (int k = 0; k < order / 2; ++k) {
        const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * order);
        const double s = std::sin(theta);
        const double a0 = c * c + 2.0 * s * c + 1.0;
        Biquad q;
        q.b0 = 1.0 / a0;
        q.b1 = 2.0 / a0;
        q.b2 = 1.0 / a0;
        q.a1 = 2.0 * (1.0 - c * c) / a0;
        q.a2 = (c * c - 2.0 * s * c + 1.0) / a0;
        sections.push_back(q);
    }
    return sections;
}

void run_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
    for (const Biquad& q : sections) {
        double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
        for (double& v : x) {
            const double in = v;
            const double out = q.b0 * in + q.b1 * x1 + q.b2 * x2 - q.a1 * y1 - q.a2 * y2;
            x2 = x1;
            x1 = in;
            y2 = y1;
            y1 = out;
            v = out;
        }
    }
}

}  // namespace

std::vector<Segment> segment_windows(const TimeSeries& x, double window_s, double stride_s,
                                     const std::optional<TimeSeries>& reference_rr,
                                     const std::string& subject_id) {
    validate(x, "segment_windows");
    if (!(window_s > 0.0) || !(stride_s > 0.0))
        throw std::invalid_argument("segment_windows: window and stride must be positive");
    const std::size_t win = static_cast<std::size_t>(std::llround(window_s * x.fs));
    const std::size_t hop = static_cast<std::size_t>(std::llround(stride_s * x.fs));
    if (win == 0 || hop == 0) throw std::invalid_argument("segment_windows: window or stride below one sample");
    if (x.samples.size() < win)
        throw std::invalid_argument("segment_windows: recording shorter than one window");

    std::vector<Segment> out;
    for (std::size_t start = 0; start + win <= x.samples.size(); start += hop) {
        Segment s;
        s.signal.samples.assign(x.samples.begin() + start, x.samples.begin() + start + win);
        s.signal.fs = x.fs;
        s.signal.t0 = x.time_at(start);
        s.subject_id = subject_id;
        if (reference_rr && !reference_rr->samples.empty()) {
            // Mean of the reference over the same index range (shared grid).
            const auto& r = reference_rr->samples;
            const std::size_t hi = std::min(start + win, r.size());
            if (start < hi) {
                double acc = 0.0;
                for (std::size_t i = start; i < hi; ++i) acc += r[i];
                s.reference_rr = acc / static_cast<double>(hi - start);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

TimeSeries butterworth_zero_phase(const TimeSeries& x, const FilterSpec& spec) {
    validate(x, "butterworth_zero_phase");
    validate(spec, x.fs);

    const auto sections = design_butterworth_lp(spec.order, spec.cutoff_hz, x.fs);
    const std::size_t n = x.samples.size();

    std::size_t pad = static_cast<std::size_t>(
        std::llround(3.0 * spec.order * (x.fs / spec.cutoff_hz)));
    pad = std::min(pad, n - 1);

    // Endpoint-reflected (point-symmetric) padding on both sides.
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x.samples.front() - x.samples[pad - i]);
    ext.insert(ext.end(), x.samples.begin(), x.samples.end());
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x.samples.back() - x.samples[n - 2 - i]);

    run_cascade(sections, ext);
    std::reverse(ext.begin(), ext.end());
    run_cascade(sections, ext);
    std::reverse(ext.begin(), ext.end());

    TimeSeries y;
    y.samples.assign(ext.begin() + pad, ext.begin() + pad + n);
    y.fs = x.fs;
    y.t0 = x.t0;
    return y;
}

TimeSeries derivative(const TimeSeries& x, int n) {
    validate(x, "derivative");
    if (n != 1 && n != 2) throw std::invalid_argument("derivative: n must be 1 or 2");
    if (x.samples.size() < 3) throw std::invalid_argument("derivative: need at least 3 samples");

    const auto& s = x.samples;
    const std::size_t m = s.size();
    TimeSeries d;
    d.samples.resize(m);
    d.fs = x.fs;
    d.t0 = x.t0;

    if (n == 1) {
        const double half = 0.5 * x.fs;
        for (std::size_t i = 1; i + 1 < m; ++i) d.samples[i] = (s[i + 1] - s[i - 1]) * half;
        d.samples[0] = (s[1] - s[0]) * x.fs;
        d.samples[m - 1] = (s[m - 1] - s[m - 2]) * x.fs;
    } else {
        const double fs2 = x.fs * x.fs;
        for (std::size_t i = 1; i + 1 < m; ++i)
            d.samples[i] = (s[i + 1] - 2.0 * s[i] + s[i - 1]) * fs2;
        d.samples[0] = (s[2] - 2.0 * s[1] + s[0]) * fs2;
        d.samples[m - 1] = (s[m - 1] - 2.0 * s[m - 2] + s[m - 3]) * fs2;
    }
    return d;
}

}  // namespace ppgrr
