#include "ppgrr/time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace ppgrr {

void validate(const TimeSeries& x, const std::string& context) {
    if (x.samples.empty()) throw std::invalid_argument(context + ": empty series");
    if (!(x.fs > 0.0)) throw std::invalid_argument(context + ": sampling rate must be positive");
    for (double v : x.samples) {
        if (!std::isfinite(v)) throw std::invalid_argument(context + ": non-finite sample");
    }
}

void validate(const FilterSpec& spec, double fs) {
    if (spec.order < 2 || spec.order % 2 != 0)
        throw std::invalid_argument("FilterSpec: order must be even and >= 2");
    if (!(spec.cutoff_hz > 0.0))
        throw std::invalid_argument("FilterSpec: cutoff must be positive");
    if (!(spec.cutoff_hz < fs / 2.0))
        throw std::invalid_argument("FilterSpec: cutoff >= Nyquist");
}

}  // namespace ppgrr
