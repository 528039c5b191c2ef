#include "tempcast/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>

#include "tempcast/errors.hpp"
#include "tempcast/format.hpp"

namespace tempcast {

namespace {

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 reader. Quoted fields may contain commas, doubled quotes and line
// breaks; CRLF and LF endings are both accepted. Blank lines are skipped.
std::vector<CsvRecord> read_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<CsvRecord> out;
    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t line = 1;
    current.line = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = current.fields.size() == 1 && current.fields[0].empty();
        if (!blank) out.push_back(std::move(current));
        current = CsvRecord{};
        current.line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    throw ParseError(ErrorCode::MalformedRow, current.line, "unexpected quote inside field");
                }
                in_quotes = true;
                field_was_quoted = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                ++line;
                end_record();
                break;
            default:
                if (field_was_quoted) {
                    throw ParseError(ErrorCode::MalformedRow, current.line, "text after closing quote");
                }
                field.push_back(c);
        }
    }
    if (in_quotes) throw ParseError(ErrorCode::MalformedRow, current.line, "unterminated quoted field");
    if (!field.empty() || field_was_quoted || !current.fields.empty()) end_record();
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
}

std::optional<double> parse_value(std::string_view raw, std::size_t line, const char* column) {
    const auto s = trim(raw);
    if (s.empty()) return std::nullopt;
    std::string_view digits = s;
    if (digits.front() == '+') digits.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(v)) {
        throw ParseError(ErrorCode::MalformedRow, line,
                         std::string("invalid ") + column + " value '" + std::string(s) + "'");
    }
    return v;
}

bool needs_quotes(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::string quote(std::string_view s) {
    if (!needs_quotes(s)) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

}  // namespace

std::string_view to_string(TemperatureUnit unit) {
    switch (unit) {
        case TemperatureUnit::Celsius: return "celsius";
        case TemperatureUnit::Fahrenheit: return "fahrenheit";
        case TemperatureUnit::TenthsCelsius: return "tenths-celsius";
    }
    return "unknown";
}

std::optional<TemperatureUnit> parse_unit(std::string_view name) {
    for (auto u : {TemperatureUnit::Celsius, TemperatureUnit::Fahrenheit, TemperatureUnit::TenthsCelsius}) {
        if (to_string(u) == name) return u;
    }
    return std::nullopt;
}

double to_kelvin(double value, TemperatureUnit unit) {
    if (!std::isfinite(value)) throw Error(ErrorCode::NonFiniteInput, "temperature is not finite");
    switch (unit) {
        case TemperatureUnit::Celsius: return value + 273.15;
        case TemperatureUnit::Fahrenheit: return (value - 32.0) * 5.0 / 9.0 + 273.15;
        case TemperatureUnit::TenthsCelsius: return value / 10.0 + 273.15;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown temperature unit");
}

RawRecordSet parse_cdo_csv(std::string_view text, TemperatureUnit unit) {
    const auto csv = read_csv(text);
    if (csv.empty()) throw Error(ErrorCode::MissingColumn, "missing header row (STATION)");

    const auto& header = csv.front().fields;
    auto find_column = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (upper(trim(header[i])) == name) return i;
        }
        return std::nullopt;
    };
    std::array<std::size_t, 3> required{};
    constexpr std::array<std::string_view, 3> kRequired{"STATION", "DATE", "TAVG"};
    for (std::size_t k = 0; k < kRequired.size(); ++k) {
        auto idx = find_column(kRequired[k]);
        if (!idx) throw Error(ErrorCode::MissingColumn, "missing column " + std::string(kRequired[k]));
        required[k] = *idx;
    }
    const auto tmax_col = find_column("TMAX");
    const auto tmin_col = find_column("TMIN");

    RawRecordSet set;
    set.unit = unit;
    set.rows.reserve(csv.size() - 1);
    for (std::size_t r = 1; r < csv.size(); ++r) {
        const auto& rec = csv[r];
        if (rec.fields.size() != header.size()) {
            throw ParseError(ErrorCode::MalformedRow, rec.line,
                             "expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(rec.fields.size()));
        }
        RawRecord row;
        row.station_id = std::string(trim(rec.fields[required[0]]));
        const auto date_text = trim(rec.fields[required[1]]);
        const auto date = parse_iso_date(date_text);
        if (!date) {
            throw ParseError(ErrorCode::MalformedDate, rec.line, "invalid date '" + std::string(date_text) + "'");
        }
        row.date = *date;
        row.tavg = parse_value(rec.fields[required[2]], rec.line, "TAVG");
        if (tmax_col) row.tmax = parse_value(rec.fields[*tmax_col], rec.line, "TMAX");
        if (tmin_col) row.tmin = parse_value(rec.fields[*tmin_col], rec.line, "TMIN");
        set.rows.push_back(std::move(row));
    }
    return set;
}

std::string write_cdo_csv(const RawRecordSet& records) {
    std::string out = "STATION,DATE,TAVG,TMAX,TMIN\n";
    for (const auto& row : records.rows) {
        out += quote(row.station_id);
        out += ',';
        out += format_iso_date(row.date);
        out += ',';
        out += optional_number(row.tavg);
        out += ',';
        out += optional_number(row.tmax);
        out += ',';
        out += optional_number(row.tmin);
        out += '\n';
    }
    return out;
}

CleanResult clean_records(const RawRecordSet& records, const CleanConfig& config) {
    CleanResult result;
    result.raw_rows = records.rows.size();

    std::vector<const RawRecord*> rows;
    for (const auto& row : records.rows) {
        if (config.station && row.station_id != *config.station) continue;
        if (config.from && std::chrono::sys_days{row.date} < std::chrono::sys_days{*config.from}) continue;
        if (config.to && std::chrono::sys_days{row.date} > std::chrono::sys_days{*config.to}) continue;
        rows.push_back(&row);
    }
    result.filtered_rows = rows.size();
    if (rows.empty()) throw Error(ErrorCode::EmptyAfterFilter, "no rows left after station/date filtering");

    std::stable_sort(rows.begin(), rows.end(), [](const RawRecord* a, const RawRecord* b) {
        return std::chrono::sys_days{a->date} < std::chrono::sys_days{b->date};
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i]->date == rows[i - 1]->date) throw DuplicateDateError(rows[i]->date);
    }

    struct Value {
        double kelvin;
        bool fallback;
    };
    std::map<long, Value> observed;  // day offset from the first row -> value
    const Date first_date = rows.front()->date;
    for (const RawRecord* row : rows) {
        std::optional<double> raw = row->tavg;
        bool fallback = false;
        if (!raw && config.tmax_tmin_fallback && row->tmax && row->tmin) {
            raw = (*row->tmax + *row->tmin) / 2.0;
            fallback = true;
        }
        if (raw) observed.emplace(days_between(first_date, row->date), Value{to_kelvin(*raw, records.unit), fallback});
    }
    if (observed.empty()) throw Error(ErrorCode::EmptyAfterFilter, "no observed temperatures after filtering");

    const long first = observed.begin()->first;
    const long last = observed.rbegin()->first;
    const long span_days = days_between(first_date, rows.back()->date) + 1;
    result.trimmed = static_cast<std::size_t>(first + (span_days - 1 - last));

    struct Day {
        Observation obs;
        bool interpolated;
        bool fallback;
    };
    std::vector<Day> days;
    days.reserve(static_cast<std::size_t>(last - first + 1));
    for (auto it = observed.begin(); it != observed.end(); ++it) {
        const auto next = std::next(it);
        days.push_back({{add_days(first_date, it->first), it->second.kelvin}, false, it->second.fallback});
        if (next == observed.end()) break;
        const long gap = next->first - it->first - 1;
        if (gap == 0) continue;
        if (static_cast<std::size_t>(gap) > config.max_gap) {
            throw GapTooLargeError(add_days(first_date, it->first + 1), static_cast<std::size_t>(gap), config.max_gap);
        }
        const double v0 = it->second.kelvin;
        const double v1 = next->second.kelvin;
        for (long k = 1; k <= gap; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(gap + 1);
            days.push_back({{add_days(first_date, it->first + k), v0 + (v1 - v0) * t}, true, false});
        }
    }

    std::vector<Observation> all;
    all.reserve(days.size());
    for (const auto& d : days) {
        all.push_back(d.obs);
        if (is_leap_day(d.obs.date)) continue;
        result.interpolated += d.interpolated ? 1 : 0;
        result.from_fallback += d.fallback ? 1 : 0;
    }
    const auto kept = drop_leap_days(all);
    result.leap_days_dropped = all.size() - kept.size();
    if (kept.empty()) throw Error(ErrorCode::EmptyAfterFilter, "series is empty after dropping leap days");

    std::string station = config.station ? *config.station : rows.front()->station_id;
    result.series = make_series(kept, std::move(station));
    return result;
}

TimeSeries clean(const RawRecordSet& records, const CleanConfig& config) {
    return clean_records(records, config).series;
}

}  // namespace tempcast
