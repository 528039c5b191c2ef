#pragma once

#include <string>
#include <string_view>

#include "tempcast/timeseries.hpp"

namespace tempcast {

/// Clean-series file: header `date,kelvin`, one row per day in ISO date
/// order, LF line endings, shortest round-trip numbers.
std::string write_series_csv(const TimeSeries& series);

/// Reads the clean-series format back; the result is validated.
TimeSeries read_series_csv(std::string_view text, std::string station_id = {});

}  // namespace tempcast
