#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempcast/date.hpp"
#include "tempcast/timeseries.hpp"

namespace tempcast {

enum class TemperatureUnit { Celsius, Fahrenheit, TenthsCelsius };

std::string_view to_string(TemperatureUnit unit);
std::optional<TemperatureUnit> parse_unit(std::string_view name);

double to_kelvin(double value, TemperatureUnit unit);

/// One data line of a NOAA Climate Data Online daily-summaries export.
struct RawRecord {
    std::string station_id;
    Date date;
    std::optional<double> tavg;
    std::optional<double> tmax;
    std::optional<double> tmin;

    friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct RawRecordSet {
    TemperatureUnit unit = TemperatureUnit::Celsius;
    std::vector<RawRecord> rows;

    friend bool operator==(const RawRecordSet&, const RawRecordSet&) = default;
};

/// Parses CDO CSV text. The header must name STATION, DATE and TAVG in any
/// order and case; TMAX and TMIN are picked up when present and everything
/// else is ignored. Fields follow RFC 4180 quoting. The caller declares the
/// unit the export was made in.
RawRecordSet parse_cdo_csv(std::string_view text, TemperatureUnit unit = TemperatureUnit::Celsius);

/// Writes STATION,DATE,TAVG,TMAX,TMIN with shortest round-trip numbers.
std::string write_cdo_csv(const RawRecordSet& records);

struct CleanConfig {
    /// Longest run of missing interior days that is filled by interpolation.
    std::size_t max_gap = 7;
    std::optional<Date> from;
    std::optional<Date> to;
    std::optional<std::string> station;
    /// Use (TMAX + TMIN) / 2 when TAVG is absent. Off by default.
    bool tmax_tmin_fallback = false;

    friend bool operator==(const CleanConfig&, const CleanConfig&) = default;
};

struct CleanResult {
    TimeSeries series;
    std::size_t raw_rows = 0;
    std::size_t filtered_rows = 0;
    /// Days in the output that were filled by linear interpolation.
    std::size_t interpolated = 0;
    /// Days in the output whose value came from the TMAX/TMIN midpoint.
    std::size_t from_fallback = 0;
    std::size_t leap_days_dropped = 0;
    /// Leading or trailing days without a value that were cut off.
    std::size_t trimmed = 0;
};

/// Filters, sorts, converts to Kelvin, fills short interior gaps, trims the
/// unobserved ends, drops leap days and validates.
CleanResult clean_records(const RawRecordSet& records, const CleanConfig& config);

TimeSeries clean(const RawRecordSet& records, const CleanConfig& config);

}  // namespace tempcast
