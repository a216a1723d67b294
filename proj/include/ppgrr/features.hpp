#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "ppgrr/fiducials.hpp"
#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Canonical feature order, 107 names. Layout:
///   [0, 45)   mean/std/var of the 15 pulse-shape quantities
///             (sys, foot amp, x, t1, tpi, tpp, t1/x, t1/tpi, x/(tpi-t1),
///              A1, A2, A1/A2, w_25, w_50, w_75)
///   [45, 93)  mean/std/var of the 16 derivative quantities
///             (v1, tv1, v2, tv2, a1, ta1, a2, ta2, v2/v1, a2/a1, tv1/tv2,
///              ta1/ta2, tv1/ta1, tv1/ta2, tv2/ta1, tv2/ta2)
///   [93, 107) whole-segment statistics on the filtered signal
///             (mean, median, std, var, mad, iqr, 25%/75% quantile,
///              skewness, kurtosis, entropy, spectral-entropy, maxfreq,
///              maxratio)
/// Statistics use the population (1/n) variance convention. Shannon entropy
/// uses 64 equal-width bins over the segment range, in bits. Spectral
/// entropy is Welch-PSD entropy normalized to [0,1]. maxfreq/maxratio are
/// the PSD argmax (Hz) and peak-to-total-power ratio within 0.05-1 Hz.
const std::vector<std::string>& feature_registry();

inline constexpr int kFeatureCount = 107;
inline constexpr int kFeatureRegistryVersion = 1;

/// One segment's feature values, ordered per feature_registry().
struct FeatureVector {
    Eigen::VectorXd values;
};

/// Stacked per-segment features with the regression target and subject ids.
/// `names` matches the columns of X (the full registry order after
/// extraction; a reordered subset after selection).
struct FeatureMatrix {
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    Eigen::VectorXd y;  ///< reference RR, breaths/min
    std::vector<std::string> groups;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
};

/// Computes the 107-feature descriptor of one accepted segment. Per-beat
/// ratio quantities skip beats with a zero denominator or non-finite value;
/// a quantity with no valid beats contributes zeros. Throws
/// std::invalid_argument with fewer than 3 beats.
FeatureVector extract_features(const std::vector<BeatFiducials>& beats, const Segment& segment);

/// Builds a FeatureMatrix from accepted segments (rows in input order).
/// Segments without a reference RR are rejected.
FeatureMatrix stack_features(const std::vector<FeatureVector>& rows,
                             const std::vector<double>& targets,
                             const std::vector<std::string>& groups);

/// CSV round-trip: header is the column names plus `rr` and `subject`.
void write_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix load_feature_matrix(const std::filesystem::path& path);

}  // namespace ppgrr
