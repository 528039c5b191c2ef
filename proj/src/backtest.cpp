#include "tempcast/backtest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "tempcast/errors.hpp"

namespace tempcast {

namespace {

// Unbiased draw in [0, bound) from raw 64-bit engine output. Avoids
// std::uniform_int_distribution, whose mapping differs between standard
// libraries.
std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine();
    while (x >= limit) x = engine();
    return x % bound;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(count);
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    // Report the failure of the earliest task so errors are scheduling-independent.
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
}

}  // namespace

std::string_view to_string(ModelKind model) {
    switch (model) {
        case ModelKind::Proposed: return "proposed";
        case ModelKind::Persistence: return "persistence";
        case ModelKind::Average: return "average";
    }
    return "unknown";
}

std::optional<ModelKind> parse_model(std::string_view name) {
    for (ModelKind m : kAllModels) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

void BacktestConfig::validate() const {
    if (season_length < 2) throw Error(ErrorCode::InvalidConfig, "season length must be >= 2");
    if (train_length < 2 * season_length + 1) {
        throw Error(ErrorCode::InvalidConfig, "train length must be at least " +
                                                  std::to_string(2 * season_length + 1) + " days");
    }
    if (leads.empty()) throw Error(ErrorCode::InvalidConfig, "at least one lead is required");
    for (std::size_t i = 0; i < leads.size(); ++i) {
        if (leads[i] < 1) throw Error(ErrorCode::InvalidConfig, "leads must be >= 1");
        if (i > 0 && leads[i] <= leads[i - 1]) {
            throw Error(ErrorCode::InvalidConfig, "leads must be strictly increasing");
        }
    }
    if (n_experiments < 1) throw Error(ErrorCode::InvalidConfig, "at least one experiment is required");
    if (models.empty()) throw Error(ErrorCode::InvalidConfig, "at least one model is required");
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (std::find(models.begin(), models.begin() + static_cast<std::ptrdiff_t>(i), models[i]) !=
            models.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw Error(ErrorCode::InvalidConfig, "model listed twice: " + std::string(to_string(models[i])));
        }
    }
    if (has_model(ModelKind::Proposed)) grid.validate();
}

bool BacktestConfig::has_model(ModelKind model) const {
    return std::find(models.begin(), models.end(), model) != models.end();
}

std::vector<std::size_t> select_origins(std::size_t series_length, const BacktestConfig& config) {
    config.validate();
    const auto max_lead = static_cast<std::size_t>(config.max_lead());
    const std::size_t required = config.train_length + max_lead + config.n_experiments - 1;
    if (series_length < required) throw InsufficientDataError(required, series_length);

    const std::size_t lo = config.train_length;
    const std::size_t feasible = series_length - max_lead - lo + 1;
    std::vector<std::size_t> pool(feasible);
    for (std::size_t i = 0; i < feasible; ++i) pool[i] = lo + i;

    // Partial Fisher-Yates: the first n slots become the sample.
    std::mt19937_64 engine(config.seed);
    for (std::size_t i = 0; i < config.n_experiments; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(draw_below(engine, feasible - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(config.n_experiments);
    std::sort(pool.begin(), pool.end());
    return pool;
}

ExperimentResult run_experiment(const TimeSeries& series, std::size_t origin, const BacktestConfig& config) {
    config.validate();
    const auto max_lead = static_cast<std::size_t>(config.max_lead());
    if (origin < config.train_length || origin + max_lead > series.size()) {
        throw Error(ErrorCode::OutOfRange, "origin " + std::to_string(origin) + " is not feasible for a series of " +
                                               std::to_string(series.size()) + " days");
    }
    const auto split = split_at_origin(series, origin, max_lead);
    const TimeSeries train = split.train.slice(origin - config.train_length, config.train_length);

    ExperimentResult result;
    result.origin = origin;
    result.errors.reserve(config.models.size());
    for (ModelKind model : config.models) {
        std::vector<double> errors;
        errors.reserve(config.leads.size());
        switch (model) {
            case ModelKind::Proposed: {
                FitResult fit = grid_search(train, config.grid, config.season_length);
                const HWState state = hw_fit(train, fit.params);
                for (int lead : config.leads) {
                    errors.push_back(hw_forecast(state, lead, fit.params) - split.test[lead - 1]);
                }
                result.fit = std::move(fit);
                break;
            }
            case ModelKind::Persistence:
                for (int lead : config.leads) errors.push_back(persistence_forecast(train, lead) - split.test[lead - 1]);
                break;
            case ModelKind::Average:
                for (int lead : config.leads) errors.push_back(average_forecast(train, lead) - split.test[lead - 1]);
                break;
        }
        result.errors.push_back(std::move(errors));
    }
    return result;
}

double pooled_rmse(std::span<const double> errors) {
    if (errors.empty()) throw Error(ErrorCode::EmptyInput, "pooled_rmse: no errors");
    double sum_sq = 0.0;
    for (double e : errors) sum_sq += e * e;
    return std::sqrt(sum_sq / static_cast<double>(errors.size()));
}

const ReportCell& BacktestReport::cell(ModelKind model, int lead) const {
    for (const auto& c : cells) {
        if (c.model == model && c.lead == lead) return c;
    }
    throw Error(ErrorCode::OutOfRange, "no report cell for " + std::string(to_string(model)) + " lead " +
                                           std::to_string(lead));
}

BacktestReport assemble_report(const BacktestConfig& config, std::vector<ExperimentResult> experiments) {
    BacktestReport report;
    report.config = config;
    report.origins.reserve(experiments.size());
    for (const auto& e : experiments) report.origins.push_back(e.origin);
    for (std::size_t m = 0; m < config.models.size(); ++m) {
        for (std::size_t l = 0; l < config.leads.size(); ++l) {
            ReportCell cell;
            cell.model = config.models[m];
            cell.lead = config.leads[l];
            cell.errors.reserve(experiments.size());
            for (const auto& e : experiments) cell.errors.push_back(e.errors.at(m).at(l));
            cell.pooled_rmse = pooled_rmse(cell.errors);
            report.cells.push_back(std::move(cell));
        }
    }
    report.experiments = std::move(experiments);
    return report;
}

BacktestReport run_backtest_at(const TimeSeries& series, const BacktestConfig& config,
                               std::span<const std::size_t> origins) {
    config.validate();
    validate_series(series);
    std::vector<ExperimentResult> experiments(origins.size());
    parallel_for(origins.size(), config.threads,
                 [&](std::size_t i) { experiments[i] = run_experiment(series, origins[i], config); });
    return assemble_report(config, std::move(experiments));
}

BacktestReport run_backtest(const TimeSeries& series, const BacktestConfig& config) {
    const auto origins = select_origins(series.size(), config);
    return run_backtest_at(series, config, origins);
}

}  // namespace tempcast
