#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ppgrr::detail {

// Small numeric helpers shared across modules. Population (1/n) conventions
// throughout; quantiles use linear interpolation between order statistics.

double mean(std::span<const double> v);

/// Population variance, 1/n.
double variance(std::span<const double> v);

inline double stddev(std::span<const double> v) { return std::sqrt(variance(v)); }

/// q in [0,1]; linear interpolation at position q*(n-1) of the sorted values.
double quantile(std::span<const double> v, double q);

double median(std::span<const double> v);

/// Median absolute deviation about the median (unscaled).
double median_abs_dev(std::span<const double> v);

/// Third standardized moment (population). Zero when the variance is zero.
double skewness(std::span<const double> v);

/// Fourth standardized moment m4/m2^2 (population, not excess; normal -> 3).
/// Zero when the variance is zero.
double kurtosis(std::span<const double> v);

}  // namespace ppgrr::detail
