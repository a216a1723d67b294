#include "ppgrr/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ppgrr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

// Linear interpolation of (ts, ys) onto query points q. ts strictly increasing.
std::vector<double> interp_linear(const std::vector<double>& ts, const std::vector<double>& ys,
                                  const std::vector<double>& q) {
    std::vector<double> out(q.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double t = q[i];
        if (t <= ts.front()) {
            out[i] = ys.front();
            continue;
        }
        if (t >= ts.back()) {
            out[i] = ys.back();
            continue;
        }
        while (j + 2 < ts.size() && ts[j + 1] <= t) ++j;
        const double w = (t - ts[j]) / (ts[j + 1] - ts[j]);
        out[i] = ys[j] + w * (ys[j + 1] - ys[j]);
    }
    return out;
}

}  // namespace

Record load_record(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_record: cannot open " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("load_record: empty file " + path.string());

    const auto cols = split_line(header);
    int t_idx = -1, v_idx = -1, rr_idx = -1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string name = trim(cols[i]);
        if (name == schema.time_col) t_idx = static_cast<int>(i);
        else if (name == schema.value_col) v_idx = static_cast<int>(i);
        else if (name == schema.rr_col) rr_idx = static_cast<int>(i);
    }
    if (t_idx < 0) throw std::runtime_error("load_record: missing column '" + schema.time_col + "'");
    if (v_idx < 0) throw std::runtime_error("load_record: missing column '" + schema.value_col + "'");

    std::vector<double> ts, vs, rrs;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        const int needed = std::max(t_idx, rr_idx >= 0 ? std::max(v_idx, rr_idx) : v_idx);
        if (static_cast<int>(fields.size()) <= needed)
            throw std::runtime_error("load_record: short row at line " + std::to_string(lineno));
        try {
            ts.push_back(std::stod(fields[t_idx]));
            vs.push_back(std::stod(fields[v_idx]));
            if (rr_idx >= 0) rrs.push_back(std::stod(fields[rr_idx]));
        } catch (const std::exception&) {
            throw std::runtime_error("load_record: unparsable number at line " + std::to_string(lineno));
        }
    }
    if (ts.empty()) throw std::runtime_error("load_record: no data rows in " + path.string());
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i] > ts[i - 1]))
            throw std::runtime_error("load_record: non-monotonic time at row " + std::to_string(i + 1));
    }

    const std::size_t n = ts.size();
    double fs;
    if (schema.declared_fs) {
        fs = *schema.declared_fs;
    } else if (n >= 2) {
        fs = static_cast<double>(n - 1) / (ts.back() - ts.front());
    } else {
        throw std::runtime_error("load_record: cannot infer sampling rate from one row");
    }
    if (!(fs > 0.0) || !std::isfinite(fs)) throw std::runtime_error("load_record: invalid sampling rate");

    // Uniformity check against the ideal grid; tolerance is 10% of a sample period.
    double max_jitter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_jitter = std::max(max_jitter, std::abs(ts[i] - (ts.front() + static_cast<double>(i) / fs)));
    }

    Record rec;
    if (max_jitter < 0.1 / fs) {
        rec.ppg = TimeSeries{std::move(vs), fs, ts.front()};
        if (rr_idx >= 0) rec.rr = TimeSeries{std::move(rrs), fs, ts.front()};
    } else {
        std::vector<double> grid(n);
        for (std::size_t i = 0; i < n; ++i) grid[i] = ts.front() + static_cast<double>(i) / fs;
        rec.ppg = TimeSeries{interp_linear(ts, vs, grid), fs, ts.front()};
        if (rr_idx >= 0) rec.rr = TimeSeries{interp_linear(ts, rrs, grid), fs, ts.front()};
    }
    validate(rec.ppg, "load_record(" + path.string() + ")");
    return rec;
}

void write_record(const std::filesystem::path& path, const TimeSeries& ppg,
                  const std::optional<TimeSeries>& rr) {
    validate(ppg, "write_record");
    if (rr && rr->samples.size() != ppg.samples.size())
        throw std::invalid_argument("write_record: rr length differs from ppg length");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_record: cannot open " + path.string());
    out << (rr ? "t,ppg,rr\n" : "t,ppg\n");
    char buf[96];
    for (std::size_t i = 0; i < ppg.samples.size(); ++i) {
        const double t = ppg.time_at(i);
        if (rr) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t, ppg.samples[i], rr->samples[i]);
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, ppg.samples[i]);
        }
        out << buf;
    }
    if (!out) throw std::runtime_error("write_record: write failed for " + path.string());
}

}  // namespace ppgrr
