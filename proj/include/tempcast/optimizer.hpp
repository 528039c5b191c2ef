#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tempcast/models.hpp"
#include "tempcast/timeseries.hpp"

namespace tempcast {

/// Candidate coefficients per axis plus local refinement settings.
struct GridSpec {
    std::vector<double> alpha_grid;
    std::vector<double> beta_grid;
    std::vector<double> gamma_grid;
    int refine_rounds = 2;
    double refine_shrink = 0.5;

    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// `points` evenly spaced values covering [0, 1].
std::vector<double> unit_grid(std::size_t points);

/// Named presets used by the CLI: coarse (5 points, 1 round), default
/// (11 points, 2 rounds), fine (21 points, 3 rounds). All shrink by 0.5.
GridSpec grid_preset(std::string_view name);
GridSpec default_grid();

struct FitResult {
    SmoothingParams params;
    double in_sample_rmse = 0.0;
    std::size_t evaluations = 0;
    /// Incumbent objective after the initial grid and after each refinement round.
    std::vector<double> round_best;

    friend bool operator==(const FitResult&, const FitResult&) = default;
};

/// In-sample one-step-ahead RMSE. The state is initialized on the whole of
/// `train` and then fed every observation in order; the m = 1 forecast made
/// before each observation from index 2L onward is scored against it.
double one_step_rmse(std::span<const double> train, const SmoothingParams& params);
double one_step_rmse(const TimeSeries& train, const SmoothingParams& params);

/// Exhaustive search over the grid followed by `refine_rounds` of local
/// re-gridding around the incumbent. Ties go to the lexicographically
/// smallest (alpha, beta, gamma). Points already evaluated are not rescored.
FitResult grid_search(std::span<const double> train, const GridSpec& spec, std::size_t season_length = 365);
FitResult grid_search(const TimeSeries& train, const GridSpec& spec, std::size_t season_length = 365);

}  // namespace tempcast
