#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ppgrr/fiducials.hpp"
#include "ppgrr/signal.hpp"
#include "ppgrr/synth.hpp"

using namespace ppgrr;

namespace {

TimeSeries triangle_train(double fs, double duration_s, double height = 1.0) {
    TimeSeries x;
    x.fs = fs;
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
    x.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = std::fmod(static_cast<double>(i) / fs, 1.0);  // 1-s period
        x.samples[i] = height * (ph < 0.5 ? 2.0 * ph : 2.0 * (1.0 - ph));
    }
    return x;
}

TimeSeries gaussian_train(double fs, double duration_s, double sigma = 0.1) {
    TimeSeries x;
    x.fs = fs;
    const std::size_t n = static_cast<std::size_t>(std::llround(duration_s * fs));
    x.samples.assign(n, 0.0);
    for (double mu = 0.5; mu < duration_s; mu += 1.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            x.samples[i] += std::exp(-(t - mu) * (t - mu) / (2.0 * sigma * sigma));
        }
    }
    return x;
}

BeatExtraction analyze(const TimeSeries& x) {
    return analyze_beats(x, derivative(x, 1), derivative(x, 2));
}

}  // namespace

TEST_CASE("detect_beats: synthetic 32 s at 70 bpm yields 37 +/- 1 peaks") {
    SynthSpec spec;
    spec.fs = 500.0;
    spec.duration_s = 32.0;
    spec.hr_bpm = 70.0;
    spec.rr_bpm = 15.0;
    auto gen = generate_ppg(spec);
    auto peaks = detect_beats(gen.signal);
    CHECK(std::abs(static_cast<long>(peaks.size()) - 37) <= 1);
    for (std::size_t i = 1; i < peaks.size(); ++i) REQUIRE(peaks[i] > peaks[i - 1]);
}

TEST_CASE("detect_beats: constant signal is a fiducial failure") {
    TimeSeries x;
    x.fs = 500.0;
    x.samples.assign(16000, 2.0);
    CHECK(detect_beats(x).empty());
    CHECK(analyze(x).detection_failed);
}

TEST_CASE("detect_beats: frequency modulation leaves the count but modulates intervals at the "
          "respiratory rate") {
    SynthSpec base;
    base.fs = 500.0;
    base.duration_s = 32.0;
    base.hr_bpm = 70.0;
    base.rr_bpm = 15.0;
    auto plain = generate_ppg(base);
    auto mod_spec = base;
    mod_spec.mod_depth_freq = 0.1;
    auto modded = generate_ppg(mod_spec);

    auto p0 = detect_beats(plain.signal);
    auto p1 = detect_beats(modded.signal);
    CHECK(std::abs(static_cast<long>(p0.size()) - static_cast<long>(p1.size())) <= 1);

    // Least-squares periodogram oracle on the interval series: the dominant
    // frequency of ibi(t) should sit at rr/60 Hz.
    std::vector<double> t_mid, ibi;
    for (std::size_t i = 1; i < p1.size(); ++i) {
        t_mid.push_back(0.5 * (p1[i] + p1[i - 1]) / base.fs);
        ibi.push_back((p1[i] - p1[i - 1]) / base.fs);
    }
    double mean_ibi = 0;
    for (double v : ibi) mean_ibi += v;
    mean_ibi /= static_cast<double>(ibi.size());

    double best_f = 0, best_power = -1;
    for (double f = 0.08; f <= 0.50001; f += 0.005) {
        double cs = 0, ss = 0, cc = 0, sss = 0, sc = 0;
        for (std::size_t i = 0; i < ibi.size(); ++i) {
            const double c = std::cos(2 * std::numbers::pi * f * t_mid[i]);
            const double s = std::sin(2 * std::numbers::pi * f * t_mid[i]);
            const double y = ibi[i] - mean_ibi;
            cs += y * c;
            ss += y * s;
            cc += c * c;
            sss += s * s;
            sc += s * c;
        }
        const double det = cc * sss - sc * sc;
        if (std::abs(det) < 1e-12) continue;
        const double a = (cs * sss - ss * sc) / det;
        const double b = (ss * cc - cs * sc) / det;
        const double power = a * cs + b * ss;
        if (power > best_power) {
            best_power = power;
            best_f = f;
        }
    }
    CHECK(best_f == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("fiducials: symmetric triangular pulse geometry") {
    auto x = triangle_train(500.0, 8.0);
    auto res = analyze(x);
    REQUIRE_FALSE(res.detection_failed);
    REQUIRE(res.beats.size() >= 4);
    for (const auto& b : res.beats) {
        CHECK(b.x == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b.amp_foot == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
        CHECK(b.t1 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(b.tpi == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b.tpp == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b.w25 == doctest::Approx(0.75).epsilon(1e-6));
        CHECK(b.w50 == doctest::Approx(0.50).epsilon(1e-6));
        CHECK(b.w75 == doctest::Approx(0.25).epsilon(1e-6));
        CHECK(b.A1 == doctest::Approx(0.25).epsilon(1e-6));
        CHECK(b.A2 == doctest::Approx(0.25).epsilon(1e-6));
        CHECK(b.w25 >= b.w50);
        CHECK(b.w50 >= b.w75);
    }
}

TEST_CASE("fiducials: doubling the amplitude doubles amplitudes and keeps times") {
    auto x1 = triangle_train(500.0, 8.0, 1.0);
    auto x2 = triangle_train(500.0, 8.0, 2.0);
    auto r1 = analyze(x1);
    auto r2 = analyze(x2);
    REQUIRE(r1.beats.size() == r2.beats.size());
    for (std::size_t i = 0; i < r1.beats.size(); ++i) {
        const auto& a = r1.beats[i];
        const auto& b = r2.beats[i];
        CHECK(b.x == doctest::Approx(2.0 * a.x).epsilon(1e-12));
        CHECK(b.t1 == a.t1);
        CHECK(b.tpi == a.tpi);
        CHECK(b.w25 == doctest::Approx(a.w25).epsilon(1e-12));
        CHECK(b.w50 == doctest::Approx(a.w50).epsilon(1e-12));
        CHECK(b.w75 == doctest::Approx(a.w75).epsilon(1e-12));
    }
}

TEST_CASE("fiducials: Gaussian pulse derivative extrema at mu - sigma and mu + sigma") {
    const double fs = 500.0;
    auto x = gaussian_train(fs, 6.0, 0.1);
    auto res = analyze(x);
    REQUIRE(res.beats.size() >= 3);
    for (const auto& b : res.beats) {
        // Feet sit at the inter-pulse midpoints, so the pulse center is at
        // foot + 0.5 s; derivative extrema of a Gaussian sit at mu -/+ sigma.
        CHECK(std::abs(b.tv1 - 0.4) <= 2.1 / fs);
        CHECK(std::abs(b.tv2 - 0.6) <= 2.1 / fs);
        // Second-derivative first local min sits at the pulse center.
        CHECK(std::abs(b.ta2 - 0.5) <= 2.1 / fs);
        CHECK(b.tv1 < b.tv2);
    }
}

TEST_CASE("fiducials: time-shift equivariance") {
    SynthSpec spec;
    spec.fs = 250.0;
    spec.duration_s = 40.0;
    spec.hr_bpm = 72.0;
    spec.rr_bpm = 14.0;
    spec.mod_depth_amp = 0.1;
    spec.baseline_amp = 0.15;
    auto gen = generate_ppg(spec);
    const std::size_t k = 137;
    const std::size_t n = 6000;

    TimeSeries a, b;
    a.fs = b.fs = spec.fs;
    a.samples.assign(gen.signal.samples.begin(), gen.signal.samples.begin() + n);
    b.samples.assign(gen.signal.samples.begin() + k, gen.signal.samples.begin() + k + n);

    auto ra = analyze(a);
    auto rb = analyze(b);
    const std::size_t margin = 800;  // keep clear of threshold edge effects
    std::size_t matched = 0;
    for (const auto& ba : ra.beats) {
        if (ba.i_foot < k + margin || ba.i_foot_next + margin > n) continue;
        for (const auto& bb : rb.beats) {
            if (bb.i_sys + k == ba.i_sys) {
                ++matched;
                CHECK(bb.i_foot + k == ba.i_foot);
                CHECK(bb.i_foot_next + k == ba.i_foot_next);
                CHECK(bb.t1 == ba.t1);
                CHECK(bb.tpi == ba.tpi);
                CHECK(bb.sys == ba.sys);
                CHECK(bb.x == ba.x);
                CHECK(bb.tv1 == ba.tv1);
                CHECK(bb.ta1 == ba.ta1);
            }
        }
    }
    CHECK(matched >= 10);
}

TEST_CASE("fiducials: amplitude scaling scales amplitude fields and keeps time fields") {
    SynthSpec spec;
    spec.fs = 250.0;
    spec.duration_s = 32.0;
    spec.hr_bpm = 68.0;
    spec.rr_bpm = 12.0;
    spec.mod_depth_amp = 0.1;
    auto gen = generate_ppg(spec);
    const double c = 3.7;
    auto scaled = gen.signal;
    for (double& v : scaled.samples) v *= c;

    auto r1 = analyze(gen.signal);
    auto r2 = analyze(scaled);
    REQUIRE(r1.beats.size() == r2.beats.size());
    for (std::size_t i = 0; i < r1.beats.size(); ++i) {
        const auto& a = r1.beats[i];
        const auto& b = r2.beats[i];
        CHECK(b.i_sys == a.i_sys);
        CHECK(b.sys == doctest::Approx(c * a.sys).epsilon(1e-12));
        CHECK(b.amp_foot == doctest::Approx(c * a.amp_foot).epsilon(1e-12));
        CHECK(b.x == doctest::Approx(c * a.x).epsilon(1e-12));
        CHECK(b.A1 == doctest::Approx(c * a.A1).epsilon(1e-12));
        CHECK(b.A2 == doctest::Approx(c * a.A2).epsilon(1e-12));
        CHECK(b.v1 == doctest::Approx(c * a.v1).epsilon(1e-12));
        CHECK(b.v2 == doctest::Approx(c * a.v2).epsilon(1e-12));
        CHECK(b.a1 == doctest::Approx(c * a.a1).epsilon(1e-12));
        CHECK(b.a2 == doctest::Approx(c * a.a2).epsilon(1e-12));
        CHECK(b.t1 == a.t1);
        CHECK(b.tpi == a.tpi);
        CHECK(b.tpp == a.tpp);
        CHECK(b.tv1 == a.tv1);
        CHECK(b.tv2 == a.tv2);
        CHECK(b.ta1 == a.ta1);
        CHECK(b.ta2 == a.ta2);
    }
}

TEST_CASE("fiducials: tpp identity against tpi and t1 of the next beat") {
    SynthSpec spec;
    spec.fs = 500.0;
    spec.duration_s = 32.0;
    spec.hr_bpm = 75.0;
    spec.rr_bpm = 15.0;
    spec.mod_depth_freq = 0.08;
    auto gen = generate_ppg(spec);
    auto res = analyze(gen.signal);
    REQUIRE(res.beats.size() >= 5);
    for (std::size_t i = 0; i + 1 < res.beats.size(); ++i) {
        const auto& b = res.beats[i];
        const auto& nb = res.beats[i + 1];
        if (nb.i_foot != b.i_foot_next) continue;  // only consecutive beats
        CHECK(std::abs(b.tpp - (b.tpi + nb.t1 - b.t1)) < 1.0 / spec.fs);
    }
}
