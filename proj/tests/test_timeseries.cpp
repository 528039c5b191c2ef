#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"
#include "tempcast/errors.hpp"
#include "tempcast/timeseries.hpp"

using namespace tempcast;
using testing::ymd;

namespace {

std::vector<Observation> daily(Date start, std::size_t n, double value = 280.0) {
    std::vector<Observation> out;
    Date d = start;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({d, value + static_cast<double>(i % 7)});
        d = add_days(d, 1);
    }
    return out;
}

template <typename Fn>
ValidationError catch_validation(Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        return e;
    }
    FAIL("expected ValidationError");
    return ValidationError(0, ValidationRule::Range, "");
}

}  // namespace

TEST_CASE("dates parse strictly and step over February 29") {
    CHECK(parse_iso_date("2016-02-29") == ymd(2016, 2, 29));
    CHECK_FALSE(parse_iso_date("2015-02-29"));
    CHECK_FALSE(parse_iso_date("2015-1-01"));
    CHECK_FALSE(parse_iso_date("2015/01/01"));
    CHECK_FALSE(parse_iso_date("2015-01-01T00"));
    CHECK(format_iso_date(ymd(2015, 3, 5)) == "2015-03-05");
    CHECK(next_noleap_day(ymd(2016, 2, 28)) == ymd(2016, 3, 1));
    CHECK(next_noleap_day(ymd(2015, 2, 28)) == ymd(2015, 3, 1));
    CHECK(next_noleap_day(ymd(2015, 12, 31)) == ymd(2016, 1, 1));
}

TEST_CASE("validate_series") {
    SUBCASE("valid series is returned unchanged") {
        const TimeSeries s(ymd(2015, 1, 1), {270.0, 271.0, 272.5});
        CHECK(&validate_series(s) == &s);
        CHECK(s.values()[2] == 272.5);
    }
    SUBCASE("range violation names the index") {
        const TimeSeries s(ymd(2015, 1, 1), {270.0, 400.0, 272.5});
        auto e = catch_validation([&] { validate_series(s); });
        CHECK(e.index() == 1);
        CHECK(e.rule() == ValidationRule::Range);
    }
    SUBCASE("bounds are exclusive") {
        CHECK_THROWS_AS(validate_series(TimeSeries(ymd(2015, 1, 1), {170.0})), ValidationError);
        CHECK_THROWS_AS(validate_series(TimeSeries(ymd(2015, 1, 1), {350.0})), ValidationError);
        CHECK_NOTHROW(validate_series(TimeSeries(ymd(2015, 1, 1), {170.0001, 349.999})));
    }
    SUBCASE("NaN") {
        const TimeSeries s(ymd(2015, 1, 1), {270.0, 271.0, std::numeric_limits<double>::quiet_NaN()});
        auto e = catch_validation([&] { validate_series(s); });
        CHECK(e.index() == 2);
        CHECK(e.rule() == ValidationRule::NotFinite);
    }
}

TEST_CASE("make_series checks calendar continuity") {
    SUBCASE("duplicate date") {
        std::vector<Observation> obs{{ymd(2015, 1, 1), 270.0}, {ymd(2015, 1, 2), 271.0}, {ymd(2015, 1, 2), 272.5}};
        auto e = catch_validation([&] { make_series(obs); });
        CHECK(e.index() == 2);
        CHECK(e.rule() == ValidationRule::NonConsecutive);
    }
    SUBCASE("gap") {
        std::vector<Observation> obs{{ymd(2015, 1, 1), 270.0}, {ymd(2015, 1, 3), 271.0}};
        CHECK(catch_validation([&] { make_series(obs); }).index() == 1);
    }
    SUBCASE("leap day must already be dropped") {
        auto obs = daily(ymd(2016, 2, 27), 4);
        CHECK(catch_validation([&] { make_series(obs); }).rule() == ValidationRule::NonConsecutive);
        auto s = make_series(drop_leap_days(obs), "X");
        CHECK(s.size() == 3);
        CHECK(s.date_at(2) == ymd(2016, 3, 1));
        CHECK(s.station_id() == "X");
    }
}

TEST_CASE("drop_leap_days") {
    SUBCASE("2016-02-28..2016-03-01") {
        auto out = drop_leap_days(daily(ymd(2016, 2, 28), 3));
        REQUIRE(out.size() == 2);
        CHECK(out[0].date == ymd(2016, 2, 28));
        CHECK(out[1].date == ymd(2016, 3, 1));
        CHECK(out[1].kelvin == 282.0);
    }
    SUBCASE("2015 has nothing to drop") {
        auto in = daily(ymd(2015, 1, 1), 365);
        CHECK(drop_leap_days(in) == in);
    }
    SUBCASE("2015-2020 span") {
        auto in = daily(ymd(2015, 1, 1), 2192);
        REQUIRE(in.back().date == ymd(2020, 12, 31));
        // Independent count of February 29 occurrences.
        std::size_t leap = 0;
        for (const auto& o : in) leap += (static_cast<unsigned>(o.date.month()) == 2 && static_cast<unsigned>(o.date.day()) == 29);
        CHECK(leap == 2);
        CHECK(drop_leap_days(in).size() == 2190);
    }
    SUBCASE("idempotent") {
        auto once = drop_leap_days(daily(ymd(2015, 6, 1), 1500));
        CHECK(drop_leap_days(once) == once);
    }
}

TEST_CASE("rmse") {
    CHECK(rmse(std::vector<double>{280, 285}, std::vector<double>{280, 285}) == 0.0);
    CHECK(rmse(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == doctest::Approx(3.5355339059327378).epsilon(1e-15));
    CHECK(rmse(std::vector<double>{281.5}, std::vector<double>{280.0}) == 1.5);
    CHECK_THROWS_AS(rmse(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), Error);
    CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), Error);
    try {
        rmse(std::vector<double>{}, std::vector<double>{});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }
}

TEST_CASE("rmse properties on random inputs") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(250.0, 310.0);
    std::uniform_int_distribution<std::size_t> len(1, 500);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = len(rng);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = u(rng);
            y[i] = u(rng);
        }
        CHECK(rmse(x, x) == 0.0);
        CHECK(rmse(x, y) == rmse(y, x));
        CHECK(testing::rel_diff(rmse(x, y), testing::brute_rmse(x, y)) <= 1e-12);
        const double c = u(rng) - 280.0;
        auto xs = x, ys = y;
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] += c;
            ys[i] += c;
        }
        CHECK(rmse(xs, ys) == doctest::Approx(rmse(x, y)).epsilon(1e-9));
    }
}

TEST_CASE("split_at_origin") {
    std::vector<double> v(10);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 270.0 + static_cast<double>(i);
    const TimeSeries s(ymd(2015, 1, 1), v);

    auto split = split_at_origin(s, 8, 2);
    CHECK(split.train.size() == 8);
    CHECK(split.test == std::vector<double>{278.0, 279.0});
    CHECK(split.train.start_date() == s.start_date());

    CHECK_THROWS_AS(split_at_origin(s, 9, 2), Error);
    CHECK_THROWS_AS(split_at_origin(s, 0, 1), Error);

    const TimeSeries long_series(ymd(2015, 1, 1), std::vector<double>(2190, 280.0));
    auto five_years = split_at_origin(long_series, 1825, 4);
    CHECK(five_years.train.size() == 5 * 365);
    CHECK(five_years.test.size() == 4);
}

TEST_CASE("split_at_origin concatenation reproduces a contiguous slice") {
    std::mt19937_64 rng(7);
    std::vector<double> v(400);
    std::uniform_real_distribution<double> u(260.0, 300.0);
    for (auto& x : v) x = u(rng);
    const TimeSeries s(ymd(2015, 1, 1), v);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t origin = std::uniform_int_distribution<std::size_t>(1, 399)(rng);
        const std::size_t lead = std::uniform_int_distribution<std::size_t>(0, 400 - origin)(rng);
        auto split = split_at_origin(s, origin, lead);
        std::vector<double> joined(split.train.values().begin(), split.train.values().end());
        joined.insert(joined.end(), split.test.begin(), split.test.end());
        CHECK(joined == std::vector<double>(v.begin(), v.begin() + static_cast<long>(origin + lead)));
    }
}

TEST_CASE("TimeSeries dates and slices use the 365-day calendar") {
    const TimeSeries s(ymd(2015, 12, 30), std::vector<double>(800, 280.0));
    const auto dates = s.dates(5);
    REQUIRE(dates.size() == 805);
    for (std::size_t i = 1; i < dates.size(); ++i) {
        CHECK_FALSE(is_leap_day(dates[i]));
        CHECK(dates[i] == next_noleap_day(dates[i - 1]));
    }
    CHECK(s.date_at(100) == dates[100]);
    auto sub = s.slice(60, 10);
    CHECK(sub.start_date() == dates[60]);
    CHECK(sub.size() == 10);
    CHECK_THROWS_AS(s.slice(795, 10), Error);
    CHECK_THROWS_AS(TimeSeries(ymd(2016, 2, 29), {280.0}), Error);
}
