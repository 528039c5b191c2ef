#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempcast/timeseries.hpp"

namespace tempcast {

/// Smoothing coefficients for level, trend and season, each in [0, 1], and
/// the number of steps per season (at least 2).
struct SmoothingParams {
    double alpha = 0.5;
    double beta = 0.1;
    double gamma = 0.1;
    std::size_t season_length = 365;

    /// Throws Error(InvalidParams) if any invariant is violated.
    void validate() const;

    friend bool operator==(const SmoothingParams&, const SmoothingParams&) = default;
};

/// Additive Holt-Winters state after consuming `steps_seen` observations.
///
/// `seasonal` is a ring of exactly L corrections. `phase` is the slot whose
/// correction applies to the next incoming observation, so the slot read by a
/// forecast m steps ahead is (phase + m - 1) mod L.
struct HWState {
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonal;
    std::size_t phase = 0;
    std::size_t steps_seen = 0;

    friend bool operator==(const HWState&, const HWState&) = default;
};

/// Initial state from all complete seasons of `train` (needs >= 2L values).
///
/// trend is the difference of the first two season means divided by L. Each
/// seasonal slot is the average deviation of that phase from its season mean,
/// with the within-season trend ramp removed so the corrections describe a
/// de-trended cycle. The level is the first season mean projected back to the
/// step before train[0], so folding hw_update over the whole of `train`
/// starts at phase 0.
HWState init_state(std::span<const double> train, const SmoothingParams& params);
HWState init_state(const TimeSeries& train, const SmoothingParams& params);

/// One additive Holt-Winters step, mutating `state` in place. hw_update and
/// hw_fit are defined in terms of this so that every path produces identical
/// bits.
void hw_update_in_place(HWState& state, double observation, const SmoothingParams& params);

HWState hw_update(const HWState& state, double observation, const SmoothingParams& params);

/// init_state followed by hw_update over every value of `train`.
HWState hw_fit(std::span<const double> train, const SmoothingParams& params);
HWState hw_fit(const TimeSeries& train, const SmoothingParams& params);

/// level + m * trend + seasonal[(phase + m - 1) mod L], for m >= 1.
double hw_forecast(const HWState& state, int lead, const SmoothingParams& params);

/// Last training value, for every lead.
double persistence_forecast(std::span<const double> train, int lead);
double persistence_forecast(const TimeSeries& train, int lead);

/// Mean of all training values, for every lead.
double average_forecast(std::span<const double> train, int lead);
double average_forecast(const TimeSeries& train, int lead);

}  // namespace tempcast
