#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tempcast/date.hpp"

namespace tempcast {

/// Plausible surface air temperature, exclusive bounds in Kelvin.
inline constexpr double kMinPlausibleKelvin = 170.0;
inline constexpr double kMaxPlausibleKelvin = 350.0;

/// One dated observation, used before a series is normalized.
struct Observation {
    Date date;
    double kelvin;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Daily air temperature in Kelvin on the 365-day calendar.
///
/// Dates are implied by `start_date` plus an offset, counting days while
/// skipping February 29, so a series can never contain gaps or duplicates.
/// Construction does not check the value invariants; run the result through
/// validate_series (make_series does so).
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(Date start_date, std::vector<double> values, std::string station_id = {});

    Date start_date() const noexcept { return start_date_; }
    const std::string& station_id() const noexcept { return station_id_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    Date date_at(std::size_t index) const;
    /// Dates of every element, plus `extra` dates continuing past the end.
    std::vector<Date> dates(std::size_t extra = 0) const;

    /// Elements [first, first + count).
    TimeSeries slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    Date start_date_{std::chrono::year{1970}, std::chrono::January, std::chrono::day{1}};
    std::vector<double> values_;
    std::string station_id_;
};

/// Forecasts issued from one origin.
struct ForecastSet {
    std::size_t origin_index = 0;
    std::vector<int> leads;
    std::vector<double> predictions;
};

/// Checks that every value is finite and inside the plausibility bounds.
/// Throws ValidationError naming the first offending index.
const TimeSeries& validate_series(const TimeSeries& series);

/// Builds a validated series from dated observations. Dates must advance one
/// day at a time on the 365-day calendar (leap days must already be gone);
/// the first break is reported as ValidationRule::NonConsecutive.
TimeSeries make_series(std::span<const Observation> observations, std::string station_id = {});

/// Removes February 29 entries, keeping everything else in order.
std::vector<Observation> drop_leap_days(std::span<const Observation> observations);

double rmse(std::span<const double> predicted, std::span<const double> actual);

struct TrainTestSplit {
    TimeSeries train;
    std::vector<double> test;
};

/// train = values[0, origin); test = values[origin, origin + max_lead).
TrainTestSplit split_at_origin(const TimeSeries& series, std::size_t origin, std::size_t max_lead);

}  // namespace tempcast
