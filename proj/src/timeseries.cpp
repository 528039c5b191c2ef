#include "tempcast/timeseries.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tempcast/errors.hpp"

namespace tempcast {

TimeSeries::TimeSeries(Date start_date, std::vector<double> values, std::string station_id)
    : start_date_(start_date), values_(std::move(values)), station_id_(std::move(station_id)) {
    if (!start_date_.ok() || is_leap_day(start_date_)) {
        throw Error(ErrorCode::Validation,
                    "series start date must be a valid non-leap day: " + format_iso_date(start_date_));
    }
}

Date TimeSeries::date_at(std::size_t index) const {
    Date d = start_date_;
    for (std::size_t i = 0; i < index; ++i) d = next_noleap_day(d);
    return d;
}

std::vector<Date> TimeSeries::dates(std::size_t extra) const {
    std::vector<Date> out;
    const std::size_t n = values_.size() + extra;
    out.reserve(n);
    Date d = start_date_;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(d);
        d = next_noleap_day(d);
    }
    return out;
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first > values_.size() || count > values_.size() - first) {
        throw Error(ErrorCode::OutOfRange, "slice [" + std::to_string(first) + ", " +
                                               std::to_string(first + count) + ") outside series of length " +
                                               std::to_string(values_.size()));
    }
    auto begin = values_.begin() + static_cast<std::ptrdiff_t>(first);
    return TimeSeries(date_at(first), std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count)),
                      station_id_);
}

namespace {

void check_value(std::size_t index, double v) {
    if (!std::isfinite(v)) {
        throw ValidationError(index, ValidationRule::NotFinite, "value is not finite");
    }
    if (!(v > kMinPlausibleKelvin && v < kMaxPlausibleKelvin)) {
        std::ostringstream os;
        os << "value " << v << " K outside (" << kMinPlausibleKelvin << ", " << kMaxPlausibleKelvin << ")";
        throw ValidationError(index, ValidationRule::Range, os.str());
    }
}

}  // namespace

const TimeSeries& validate_series(const TimeSeries& series) {
    const auto values = series.values();
    for (std::size_t i = 0; i < values.size(); ++i) check_value(i, values[i]);
    return series;
}

TimeSeries make_series(std::span<const Observation> observations, std::string station_id) {
    if (observations.empty()) throw Error(ErrorCode::EmptyInput, "no observations");
    std::vector<double> values;
    values.reserve(observations.size());
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto& obs = observations[i];
        if (is_leap_day(obs.date)) {
            throw ValidationError(i, ValidationRule::NonConsecutive,
                                  "leap day " + format_iso_date(obs.date) + " present");
        }
        if (i > 0) {
            const Date expected = next_noleap_day(observations[i - 1].date);
            if (obs.date != expected) {
                throw ValidationError(i, ValidationRule::NonConsecutive,
                                      "expected " + format_iso_date(expected) + ", got " +
                                          format_iso_date(obs.date));
            }
        }
        check_value(i, obs.kelvin);
        values.push_back(obs.kelvin);
    }
    return TimeSeries(observations.front().date, std::move(values), std::move(station_id));
}

std::vector<Observation> drop_leap_days(std::span<const Observation> observations) {
    std::vector<Observation> out;
    out.reserve(observations.size());
    for (const auto& obs : observations) {
        if (!is_leap_day(obs.date)) out.push_back(obs);
    }
    return out;
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw Error(ErrorCode::LengthMismatch, "rmse: lengths differ (" + std::to_string(predicted.size()) +
                                                   " vs " + std::to_string(actual.size()) + ")");
    }
    if (predicted.empty()) throw Error(ErrorCode::EmptyInput, "rmse: empty input");
    const double sum_sq = std::transform_reduce(
        predicted.begin(), predicted.end(), actual.begin(), 0.0, std::plus<>{}, [](double p, double a) {
            const double d = p - a;
            return d * d;
        });
    return std::sqrt(sum_sq / static_cast<double>(predicted.size()));
}

TrainTestSplit split_at_origin(const TimeSeries& series, std::size_t origin, std::size_t max_lead) {
    if (origin < 1 || origin > series.size() || max_lead > series.size() - origin) {
        throw Error(ErrorCode::OutOfRange, "split_at_origin: origin " + std::to_string(origin) + " + lead " +
                                               std::to_string(max_lead) + " outside series of length " +
                                               std::to_string(series.size()));
    }
    const auto values = series.values();
    TrainTestSplit split{
        TimeSeries(series.start_date(), std::vector<double>(values.begin(), values.begin() + origin),
                   series.station_id()),
        std::vector<double>(values.begin() + origin, values.begin() + origin + max_lead)};
    return split;
}

}  // namespace tempcast
