#include "tempcast/series_io.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "tempcast/errors.hpp"
#include "tempcast/format.hpp"

namespace tempcast {

std::string write_series_csv(const TimeSeries& series) {
    std::string out = "date,kelvin\n";
    const auto dates = series.dates();
    const auto values = series.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += format_iso_date(dates[i]);
        out += ',';
        out += format_number(values[i]);
        out += '\n';
    }
    return out;
}

TimeSeries read_series_csv(std::string_view text, std::string station_id) {
    std::vector<Observation> observations;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (line.ends_with('\r')) line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "date,kelvin") {
                throw ParseError(ErrorCode::MissingColumn, line_no, "expected header 'date,kelvin'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError(ErrorCode::MalformedRow, line_no, "expected two fields");
        }
        const auto date = parse_iso_date(line.substr(0, comma));
        if (!date) throw ParseError(ErrorCode::MalformedDate, line_no, "invalid date");
        const auto value_text = line.substr(comma + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), v);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size() || !std::isfinite(v)) {
            throw ParseError(ErrorCode::MalformedRow, line_no, "invalid kelvin value");
        }
        observations.push_back({*date, v});
    }
    if (!header_seen) throw Error(ErrorCode::MissingColumn, "empty series file");
    if (observations.empty()) throw Error(ErrorCode::EmptyInput, "series file has no rows");
    return make_series(observations, std::move(station_id));
}

}  // namespace tempcast
