#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempcast/models.hpp"
#include "tempcast/optimizer.hpp"
#include "tempcast/timeseries.hpp"

namespace tempcast {

enum class ModelKind { Proposed, Persistence, Average };

inline constexpr std::array<ModelKind, 3> kAllModels{ModelKind::Proposed, ModelKind::Persistence,
                                                     ModelKind::Average};

std::string_view to_string(ModelKind model);
std::optional<ModelKind> parse_model(std::string_view name);

/// Rolling-origin protocol. An experiment at origin o trains on the
/// `train_length` values ending just before o and forecasts o + m - 1 for
/// every lead m.
struct BacktestConfig {
    std::size_t train_length = 1825;
    std::vector<int> leads{1, 2, 3, 4};
    std::size_t n_experiments = 50;
    std::uint64_t seed = 0;
    std::vector<ModelKind> models{kAllModels.begin(), kAllModels.end()};
    GridSpec grid = default_grid();
    std::size_t season_length = 365;
    /// Worker threads for experiments; 0 picks the hardware concurrency.
    std::size_t threads = 0;

    void validate() const;
    int max_lead() const { return leads.back(); }
    bool has_model(ModelKind model) const;
};

/// Distinct origins drawn uniformly without replacement from
/// [train_length, series_length - max_lead], sorted ascending.
std::vector<std::size_t> select_origins(std::size_t series_length, const BacktestConfig& config);

/// Signed forecast errors (forecast - actual) of one experiment.
struct ExperimentResult {
    std::size_t origin = 0;
    /// Coefficients chosen for the proposed model, when it ran.
    std::optional<FitResult> fit;
    /// errors[model index in config.models][lead index]
    std::vector<std::vector<double>> errors;

    friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

ExperimentResult run_experiment(const TimeSeries& series, std::size_t origin, const BacktestConfig& config);

struct ReportCell {
    ModelKind model = ModelKind::Proposed;
    int lead = 1;
    double pooled_rmse = 0.0;
    /// One signed error per experiment, in origin order.
    std::vector<double> errors;

    friend bool operator==(const ReportCell&, const ReportCell&) = default;
};

struct BacktestReport {
    BacktestConfig config;
    std::vector<std::size_t> origins;
    std::vector<ExperimentResult> experiments;
    /// Model-major: cells[model_index * leads.size() + lead_index].
    std::vector<ReportCell> cells;

    const ReportCell& cell(ModelKind model, int lead) const;
};

/// Square root of the mean squared error across experiments.
double pooled_rmse(std::span<const double> errors);

/// Pools per-experiment errors into report cells.
BacktestReport assemble_report(const BacktestConfig& config, std::vector<ExperimentResult> experiments);

/// Runs every experiment for the given origins (parallel when allowed) and
/// pools the result. Output depends only on the inputs, never on scheduling.
BacktestReport run_backtest_at(const TimeSeries& series, const BacktestConfig& config,
                               std::span<const std::size_t> origins);

BacktestReport run_backtest(const TimeSeries& series, const BacktestConfig& config);

}  // namespace tempcast
