#include "ppgrr/features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "ppgrr/detail/stats.hpp"
#include "ppgrr/spectrum.hpp"

namespace ppgrr {

namespace {

struct Quantity {
    const char* name;
    std::function<std::optional<double>(const BeatFiducials&)> get;
};

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    const double r = num / den;
    if (!std::isfinite(r)) return std::nullopt;
    return r;
}

const std::vector<Quantity>& beat_quantities() {
    static const std::vector<Quantity> q = {
        {"sys", [](const BeatFiducials& b) { return std::optional<double>(b.sys); }},
        {"foot amp", [](const BeatFiducials& b) { return std::optional<double>(b.amp_foot); }},
        {"x", [](const BeatFiducials& b) { return std::optional<double>(b.x); }},
        {"t1", [](const BeatFiducials& b) { return std::optional<double>(b.t1); }},
        {"tpi", [](const BeatFiducials& b) { return std::optional<double>(b.tpi); }},
        {"tpp", [](const BeatFiducials& b) { return std::optional<double>(b.tpp); }},
        {"t1/x", [](const BeatFiducials& b) { return ratio(b.t1, b.x); }},
        {"t1/tpi", [](const BeatFiducials& b) { return ratio(b.t1, b.tpi); }},
        {"x/(tpi-t1)", [](const BeatFiducials& b) { return ratio(b.x, b.tpi - b.t1); }},
        {"A1", [](const BeatFiducials& b) { return std::optional<double>(b.A1); }},
        {"A2", [](const BeatFiducials& b) { return std::optional<double>(b.A2); }},
        {"A1/A2", [](const BeatFiducials& b) { return ratio(b.A1, b.A2); }},
        {"w_25", [](const BeatFiducials& b) { return std::optional<double>(b.w25); }},
        {"w_50", [](const BeatFiducials& b) { return std::optional<double>(b.w50); }},
        {"w_75", [](const BeatFiducials& b) { return std::optional<double>(b.w75); }},
        {"v1", [](const BeatFiducials& b) { return std::optional<double>(b.v1); }},
        {"tv1", [](const BeatFiducials& b) { return std::optional<double>(b.tv1); }},
        {"v2", [](const BeatFiducials& b) { return std::optional<double>(b.v2); }},
        {"tv2", [](const BeatFiducials& b) { return std::optional<double>(b.tv2); }},
        {"a1", [](const BeatFiducials& b) { return std::optional<double>(b.a1); }},
        {"ta1", [](const BeatFiducials& b) { return std::optional<double>(b.ta1); }},
        {"a2", [](const BeatFiducials& b) { return std::optional<double>(b.a2); }},
        {"ta2", [](const BeatFiducials& b) { return std::optional<double>(b.ta2); }},
        {"v2/v1", [](const BeatFiducials& b) { return ratio(b.v2, b.v1); }},
        {"a2/a1", [](const BeatFiducials& b) { return ratio(b.a2, b.a1); }},
        {"tv1/tv2", [](const BeatFiducials& b) { return ratio(b.tv1, b.tv2); }},
        {"ta1/ta2", [](const BeatFiducials& b) { return ratio(b.ta1, b.ta2); }},
        {"tv1/ta1", [](const BeatFiducials& b) { return ratio(b.tv1, b.ta1); }},
        {"tv1/ta2", [](const BeatFiducials& b) { return ratio(b.tv1, b.ta2); }},
        {"tv2/ta1", [](const BeatFiducials& b) { return ratio(b.tv2, b.ta1); }},
        {"tv2/ta2", [](const BeatFiducials& b) { return ratio(b.tv2, b.ta2); }},
    };
    return q;
}

const char* const kSegmentFeatureNames[] = {
    "mean(sig)", "median(sig)", "std(sig)",      "var(sig)",         "mad(sig)",
    "iqr(sig)",  "25% quantile", "75% quantile", "skewness(sig)",    "kurtosis(sig)",
    "entropy(sig)", "spectral-entropy", "maxfreq", "maxratio",
};

double shannon_entropy_bits(const std::vector<double>& v, int bins) {
    double lo = v[0], hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!(hi > lo)) return 0.0;
    std::vector<std::size_t> count(bins, 0);
    for (double x : v) {
        int b = static_cast<int>((x - lo) / (hi - lo) * bins);
        b = std::min(b, bins - 1);
        ++count[b];
    }
    double h = 0.0;
    const double n = static_cast<double>(v.size());
    for (std::size_t c : count) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

constexpr double kBandLoHz = 0.05;
constexpr double kBandHiHz = 1.0;

}  // namespace

const std::vector<std::string>& feature_registry() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        out.reserve(kFeatureCount);
        for (const auto& q : beat_quantities()) {
            out.push_back("mean(" + std::string(q.name) + ")");
            out.push_back("std(" + std::string(q.name) + ")");
            out.push_back("var(" + std::string(q.name) + ")");
        }
        for (const char* n : kSegmentFeatureNames) out.emplace_back(n);
        return out;
    }();
    return names;
}

FeatureVector extract_features(const std::vector<BeatFiducials>& beats, const Segment& segment) {
    if (beats.size() < 3) throw std::invalid_argument("extract_features: fewer than 3 beats");
    validate(segment.signal, "extract_features");

    FeatureVector fv;
    fv.values.resize(kFeatureCount);
    Eigen::Index k = 0;

    std::vector<double> vals;
    vals.reserve(beats.size());
    for (const auto& q : beat_quantities()) {
        vals.clear();
        for (const auto& b : beats) {
            if (auto v = q.get(b); v && std::isfinite(*v)) vals.push_back(*v);
        }
        if (vals.empty()) {
            fv.values[k++] = 0.0;
            fv.values[k++] = 0.0;
            fv.values[k++] = 0.0;
            continue;
        }
        const double var = detail::variance(vals);
        fv.values[k++] = detail::mean(vals);
        fv.values[k++] = std::sqrt(var);
        fv.values[k++] = var;
    }

    const auto& sig = segment.signal.samples;
    const double q25 = detail::quantile(sig, 0.25);
    const double q75 = detail::quantile(sig, 0.75);
    const double var = detail::variance(sig);
    fv.values[k++] = detail::mean(sig);
    fv.values[k++] = detail::median(sig);
    fv.values[k++] = std::sqrt(var);
    fv.values[k++] = var;
    fv.values[k++] = detail::median_abs_dev(sig);
    fv.values[k++] = q75 - q25;
    fv.values[k++] = q25;
    fv.values[k++] = q75;
    fv.values[k++] = detail::skewness(sig);
    fv.values[k++] = detail::kurtosis(sig);
    fv.values[k++] = shannon_entropy_bits(sig, 64);

    const Psd psd = welch_psd(sig, segment.signal.fs);
    double total = 0.0;
    for (double p : psd.power) total += p;
    double spec_h = 0.0;
    if (total > 0.0) {
        for (double p : psd.power) {
            if (p <= 0.0) continue;
            const double pr = p / total;
            spec_h -= pr * std::log2(pr);
        }
        spec_h /= std::log2(static_cast<double>(psd.power.size()));
    }
    fv.values[k++] = spec_h;

    double band_total = 0.0, band_max = 0.0, band_argmax = 0.0;
    for (std::size_t i = 0; i < psd.freq.size(); ++i) {
        if (psd.freq[i] < kBandLoHz || psd.freq[i] > kBandHiHz) continue;
        band_total += psd.power[i];
        if (psd.power[i] > band_max) {
            band_max = psd.power[i];
            band_argmax = psd.freq[i];
        }
    }
    fv.values[k++] = band_argmax;
    fv.values[k++] = band_total > 0.0 ? band_max / band_total : 0.0;

    if (k != kFeatureCount) throw std::logic_error("extract_features: registry size mismatch");
    for (Eigen::Index i = 0; i < fv.values.size(); ++i) {
        if (!std::isfinite(fv.values[i])) fv.values[i] = 0.0;
    }
    return fv;
}

FeatureMatrix stack_features(const std::vector<FeatureVector>& rows,
                             const std::vector<double>& targets,
                             const std::vector<std::string>& groups) {
    if (rows.size() != targets.size() || rows.size() != groups.size())
        throw std::invalid_argument("stack_features: length mismatch");
    FeatureMatrix m;
    m.names = feature_registry();
    m.X.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
    m.y.resize(static_cast<Eigen::Index>(rows.size()));
    m.groups = groups;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].values.size() != kFeatureCount)
            throw std::invalid_argument("stack_features: row width mismatch");
        if (targets[i] < 0.0 || targets[i] > 100.0)
            throw std::invalid_argument("stack_features: target outside [0,100]");
        m.X.row(static_cast<Eigen::Index>(i)) = rows[i].values.transpose();
        m.y[static_cast<Eigen::Index>(i)] = targets[i];
    }
    return m;
}

void write_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_feature_matrix: cannot open " + path.string());
    for (const auto& n : m.names) out << n << ',';
    out << "rr,subject\n";
    char buf[40];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g,", m.X(r, c));
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g,", m.y[r]);
        out << buf << m.groups[static_cast<std::size_t>(r)] << '\n';
    }
    if (!out) throw std::runtime_error("write_feature_matrix: write failed");
}

FeatureMatrix load_feature_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_feature_matrix: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_feature_matrix: empty file");

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) header.push_back(f);
    }
    if (header.size() < 3 || header[header.size() - 2] != "rr" || header.back() != "subject")
        throw std::runtime_error("load_feature_matrix: header must end with rr,subject");
    const std::size_t ncols = header.size() - 2;

    std::vector<std::vector<double>> data;
    std::vector<double> targets;
    std::vector<std::string> groups;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != header.size())
            throw std::runtime_error("load_feature_matrix: row width mismatch");
        std::vector<double> row(ncols);
        for (std::size_t c = 0; c < ncols; ++c) row[c] = std::stod(fields[c]);
        data.push_back(std::move(row));
        targets.push_back(std::stod(fields[ncols]));
        groups.push_back(fields[ncols + 1]);
    }

    FeatureMatrix m;
    m.names.assign(header.begin(), header.begin() + static_cast<long>(ncols));
    m.X.resize(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(ncols));
    m.y.resize(static_cast<Eigen::Index>(data.size()));
    m.groups = std::move(groups);
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (std::size_t c = 0; c < ncols; ++c) m.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r][c];
        m.y[static_cast<Eigen::Index>(r)] = targets[r];
    }
    return m;
}

}  // namespace ppgrr
