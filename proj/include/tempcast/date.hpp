#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tempcast {

using Date = std::chrono::year_month_day;

/// Strict YYYY-MM-DD. Returns nullopt for anything else, including impossible
/// calendar dates such as 2015-02-29.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(Date date);

bool is_leap_day(Date date) noexcept;

Date add_days(Date date, long days) noexcept;

/// Next day in the 365-day calendar: February 29 is skipped.
Date next_noleap_day(Date date) noexcept;

/// Signed day count from `from` to `to` in the ordinary Gregorian calendar.
long days_between(Date from, Date to) noexcept;

}  // namespace tempcast
