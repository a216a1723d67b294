#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ppgrr/time_series.hpp"

namespace ppgrr {

/// Column layout of a recording CSV. The file must have a header row,
/// comma separators, '.' decimals. The rr column is optional.
struct CsvSchema {
    std::string time_col = "t";    ///< seconds
    std::string value_col = "ppg";
    std::string rr_col = "rr";     ///< breaths/min; ignored when absent from the header
    std::optional<double> declared_fs;  ///< Hz; estimated from the time span when unset
};

/// A loaded recording: the PPG series plus the reference RR series when present.
struct Record {
    TimeSeries ppg;
    std::optional<TimeSeries> rr;
};

/// Reads a recording CSV. Verifies uniform sampling (max timestamp deviation
/// from the uniform grid below 10% of a sample period); otherwise resamples
/// both columns onto the uniform grid by linear interpolation.
/// Throws std::runtime_error on missing columns, non-monotonic time or an
/// empty file.
Record load_record(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Writes a recording in the standard schema (t, ppg[, rr]).
void write_record(const std::filesystem::path& path, const TimeSeries& ppg,
                  const std::optional<TimeSeries>& rr = std::nullopt);

}  // namespace ppgrr
