#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "tempcast/backtest.hpp"
#include "tempcast/errors.hpp"

using namespace tempcast;

namespace {

// Small configuration for fast tests: L = 4, train 20.
BacktestConfig small_config() {
    BacktestConfig c;
    c.season_length = 4;
    c.train_length = 20;
    c.n_experiments = 10;
    c.grid = GridSpec{unit_grid(3), unit_grid(3), unit_grid(3), 1, 0.5};
    c.threads = 1;
    return c;
}

TimeSeries noisy_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto x = testing::noiseless(n, 280.0, 0.02, {3, -1, 2, -4});
    std::normal_distribution<double> noise(0.0, 1.5);
    for (auto& v : x) v += noise(rng);
    return testing::series_from(x);
}

}  // namespace

TEST_CASE("config validation") {
    BacktestConfig c;
    CHECK_NOTHROW(c.validate());
    c.train_length = 730;
    CHECK_THROWS_AS(c.validate(), Error);
    c = BacktestConfig{};
    c.leads = {1, 3, 2};
    CHECK_THROWS_AS(c.validate(), Error);
    c.leads = {0, 1};
    CHECK_THROWS_AS(c.validate(), Error);
    c.leads = {};
    CHECK_THROWS_AS(c.validate(), Error);
    c = BacktestConfig{};
    c.n_experiments = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = BacktestConfig{};
    c.models = {ModelKind::Average, ModelKind::Average};
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK(parse_model("persistence") == ModelKind::Persistence);
    CHECK_FALSE(parse_model("arima"));
}

TEST_CASE("select_origins") {
    BacktestConfig c;
    SUBCASE("default protocol on six years") {
        const auto origins = select_origins(2190, c);
        REQUIRE(origins.size() == 50);
        CHECK(std::is_sorted(origins.begin(), origins.end()));
        CHECK(std::set<std::size_t>(origins.begin(), origins.end()).size() == 50);
        for (auto o : origins) {
            CHECK(o >= 1825);
            CHECK(o <= 2186);
        }
        CHECK(select_origins(2190, c) == origins);
        c.seed = 1;
        CHECK(select_origins(2190, c) != origins);
    }
    SUBCASE("exhausting the feasible range") {
        c.n_experiments = 2190 - 4 - 1825 + 1;
        const auto origins = select_origins(2190, c);
        for (std::size_t i = 0; i < origins.size(); ++i) CHECK(origins[i] == 1825 + i);
    }
    SUBCASE("insufficient data") {
        try {
            select_origins(1830, c);
            FAIL("expected InsufficientData");
        } catch (const InsufficientDataError& e) {
            CHECK(e.required() == 1825 + 4 + 49);
            CHECK(e.available() == 1830);
        }
    }
}

TEST_CASE("run_experiment") {
    auto c = small_config();
    SUBCASE("persistence error is zero when the future repeats the last value") {
        std::vector<double> x = testing::noiseless(30, 280.0, 0.0, {1, -1, 2, -2});
        for (std::size_t i = 24; i < 30; ++i) x[i] = x[23];
        c.models = {ModelKind::Persistence};
        const auto r = run_experiment(testing::series_from(x), 24, c);
        for (double e : r.errors[0]) CHECK(e == 0.0);
        CHECK_FALSE(r.fit.has_value());
    }
    SUBCASE("noiseless trend + season: proposed model is exact") {
        const auto x = testing::noiseless(40, 280.0, 0.3, {1, -1, 2, -2});
        c.models = {ModelKind::Proposed};
        const auto r = run_experiment(testing::series_from(x), 30, c);
        REQUIRE(r.fit.has_value());
        for (double e : r.errors[0]) CHECK(std::abs(e) < 1e-5);
    }
    SUBCASE("constant series: every model is exact") {
        const auto r = run_experiment(testing::series_from(std::vector<double>(40, 280.0)), 25, c);
        REQUIRE(r.errors.size() == 3);
        for (const auto& model : r.errors)
            for (double e : model) CHECK(e == 0.0);
    }
    SUBCASE("training window is the trailing train_length values") {
        auto x = testing::noiseless(40, 280.0, 0.0, {1, -1, 2, -2});
        x[0] = 200.0;  // outside the window for origin 30
        c.models = {ModelKind::Average};
        const auto r = run_experiment(testing::series_from(x), 30, c);
        const double mean = testing::brute_mean(std::vector<double>(x.begin() + 10, x.begin() + 30));
        CHECK(r.errors[0][0] == doctest::Approx(mean - x[30]));
    }
    SUBCASE("infeasible origin") {
        CHECK_THROWS_AS(run_experiment(testing::series_from(std::vector<double>(40, 280.0)), 19, c), Error);
        CHECK_THROWS_AS(run_experiment(testing::series_from(std::vector<double>(40, 280.0)), 37, c), Error);
    }
}

TEST_CASE("run_backtest") {
    const auto series = noisy_series(120, 3);
    auto c = small_config();

    SUBCASE("report is self-consistent") {
        const auto report = run_backtest(series, c);
        CHECK(report.origins.size() == c.n_experiments);
        CHECK(report.cells.size() == 3 * 4);
        for (const auto& cell : report.cells) {
            REQUIRE(cell.errors.size() == c.n_experiments);
            CHECK(testing::rel_diff(cell.pooled_rmse, testing::brute_rmse(cell.errors, std::vector<double>(cell.errors.size(), 0.0))) <= 1e-12);
        }
    }
    SUBCASE("persistence errors by direct indexing") {
        const auto report = run_backtest(series, c);
        for (int lead : c.leads) {
            const auto& cell = report.cell(ModelKind::Persistence, lead);
            for (std::size_t i = 0; i < report.origins.size(); ++i) {
                const std::size_t o = report.origins[i];
                CHECK(cell.errors[i] == series[o - 1] - series[o - 1 + static_cast<std::size_t>(lead)]);
            }
        }
    }
    SUBCASE("single experiment: pooled RMSE is the absolute error") {
        c.n_experiments = 1;
        const auto report = run_backtest(series, c);
        for (const auto& cell : report.cells) CHECK(cell.pooled_rmse == std::abs(cell.errors[0]));
    }
    SUBCASE("constant series: all cells zero") {
        const auto report = run_backtest(testing::series_from(std::vector<double>(60, 285.0)), c);
        for (const auto& cell : report.cells) CHECK(cell.pooled_rmse == 0.0);
    }
    SUBCASE("deterministic and independent of scheduling") {
        const auto a = run_backtest(series, c);
        c.threads = 4;
        const auto b = run_backtest(series, c);
        CHECK(a.cells == b.cells);
        CHECK(a.experiments == b.experiments);
        // Reverse execution order.
        std::vector<ExperimentResult> reversed;
        for (auto it = a.origins.rbegin(); it != a.origins.rend(); ++it) reversed.push_back(run_experiment(series, *it, c));
        std::reverse(reversed.begin(), reversed.end());
        CHECK(assemble_report(c, reversed).cells == a.cells);
    }
    SUBCASE("model subset") {
        c.models = {ModelKind::Persistence};
        const auto report = run_backtest(series, c);
        CHECK(report.cells.size() == 4);
        CHECK_THROWS_AS(report.cell(ModelKind::Proposed, 1), Error);
    }
    SUBCASE("insufficient data propagates") {
        CHECK_THROWS_AS(run_backtest(noisy_series(30, 1), c), InsufficientDataError);
    }
}

TEST_CASE("synthetic annual cycle reaches the noise floor") {
    // sigma = 3 K noise; the ring is initialized from 5 noisy seasons, so the
    // floor sits a little above sigma.
    const auto x = testing::synthetic_annual(6, 278.0, 15.0, 0.3, 3.0, 2);
    BacktestConfig c;
    c.models = {ModelKind::Proposed};
    c.leads = {1};
    const double r = run_backtest(testing::series_from(x), c).cell(ModelKind::Proposed, 1).pooled_rmse;
    CHECK(r >= 2.4);
    CHECK(r <= 4.2);
}
