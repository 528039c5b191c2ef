#include "tempcast/date.hpp"

#include <charconv>
#include <cstdio>

namespace tempcast {

namespace {

bool parse_digits(std::string_view text, int& out) {
    for (char c : text) {
        if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_iso_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

bool is_leap_day(Date date) noexcept {
    return date.month() == std::chrono::February && date.day() == std::chrono::day{29};
}

Date add_days(Date date, long days) noexcept {
    return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

Date next_noleap_day(Date date) noexcept {
    Date next = add_days(date, 1);
    return is_leap_day(next) ? add_days(next, 1) : next;
}

long days_between(Date from, Date to) noexcept {
    return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

}  // namespace tempcast
