#include "tempcast/models.hpp"

#include <cmath>
#include <numeric>

#include "tempcast/errors.hpp"

namespace tempcast {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

void check_lead(int lead) {
    if (lead < 1) throw Error(ErrorCode::InvalidLead, "lead must be >= 1, got " + std::to_string(lead));
}

void check_ring(const HWState& state, const SmoothingParams& params) {
    if (state.seasonal.size() != params.season_length || state.phase >= params.season_length) {
        throw Error(ErrorCode::InvalidParams, "state does not match season length " +
                                                  std::to_string(params.season_length));
    }
}

}  // namespace

void SmoothingParams::validate() const {
    if (!in_unit_interval(alpha) || !in_unit_interval(beta) || !in_unit_interval(gamma)) {
        throw Error(ErrorCode::InvalidParams, "smoothing coefficients must lie in [0, 1]");
    }
    if (season_length < 2) throw Error(ErrorCode::InvalidParams, "season length must be >= 2");
}

HWState init_state(std::span<const double> train, const SmoothingParams& params) {
    params.validate();
    const std::size_t L = params.season_length;
    if (train.size() < 2 * L) {
        throw Error(ErrorCode::TooShort, "need at least " + std::to_string(2 * L) +
                                             " training values for season length " + std::to_string(L) +
                                             ", got " + std::to_string(train.size()));
    }
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (!std::isfinite(train[i])) {
            throw Error(ErrorCode::NonFiniteObservation, "non-finite training value at index " + std::to_string(i));
        }
    }

    const std::size_t seasons = train.size() / L;
    std::vector<double> means(seasons);
    for (std::size_t k = 0; k < seasons; ++k) {
        auto season = train.subspan(k * L, L);
        means[k] = std::accumulate(season.begin(), season.end(), 0.0) / static_cast<double>(L);
    }

    HWState state;
    state.trend = (means[1] - means[0]) / static_cast<double>(L);
    // The first season mean sits at its midpoint, (L - 1) / 2 steps after
    // train[0]; the state has to describe the step before train[0].
    state.level = means[0] - state.trend * (static_cast<double>(L) + 1.0) / 2.0;

    const double centre = (static_cast<double>(L) - 1.0) / 2.0;
    state.seasonal.assign(L, 0.0);
    for (std::size_t p = 0; p < L; ++p) {
        double sum = 0.0;
        for (std::size_t k = 0; k < seasons; ++k) sum += train[k * L + p] - means[k];
        state.seasonal[p] = sum / static_cast<double>(seasons) - state.trend * (static_cast<double>(p) - centre);
    }
    state.phase = 0;
    state.steps_seen = 0;
    return state;
}

HWState init_state(const TimeSeries& train, const SmoothingParams& params) {
    return init_state(train.values(), params);
}

void hw_update_in_place(HWState& state, double observation, const SmoothingParams& params) {
    if (!std::isfinite(observation)) throw Error(ErrorCode::NonFiniteObservation, "observation is not finite");
    const double prev_level = state.level;
    double& slot = state.seasonal[state.phase];
    state.level = params.alpha * (observation - slot) + (1.0 - params.alpha) * (prev_level + state.trend);
    state.trend = params.beta * (state.level - prev_level) + (1.0 - params.beta) * state.trend;
    slot = params.gamma * (observation - state.level) + (1.0 - params.gamma) * slot;
    state.phase = state.phase + 1 == params.season_length ? 0 : state.phase + 1;
    ++state.steps_seen;
}

HWState hw_update(const HWState& state, double observation, const SmoothingParams& params) {
    params.validate();
    check_ring(state, params);
    HWState next = state;
    hw_update_in_place(next, observation, params);
    return next;
}

HWState hw_fit(std::span<const double> train, const SmoothingParams& params) {
    HWState state = init_state(train, params);
    for (double v : train) hw_update_in_place(state, v, params);
    return state;
}

HWState hw_fit(const TimeSeries& train, const SmoothingParams& params) { return hw_fit(train.values(), params); }

double hw_forecast(const HWState& state, int lead, const SmoothingParams& params) {
    check_lead(lead);
    check_ring(state, params);
    const std::size_t L = params.season_length;
    const std::size_t slot = (state.phase + static_cast<std::size_t>(lead - 1) % L) % L;
    return state.level + lead * state.trend + state.seasonal[slot];
}

double persistence_forecast(std::span<const double> train, int lead) {
    check_lead(lead);
    if (train.empty()) throw Error(ErrorCode::EmptyInput, "persistence forecast needs a nonempty history");
    return train.back();
}

double persistence_forecast(const TimeSeries& train, int lead) { return persistence_forecast(train.values(), lead); }

double average_forecast(std::span<const double> train, int lead) {
    check_lead(lead);
    if (train.empty()) throw Error(ErrorCode::EmptyInput, "average forecast needs a nonempty history");
    return std::accumulate(train.begin(), train.end(), 0.0) / static_cast<double>(train.size());
}

double average_forecast(const TimeSeries& train, int lead) { return average_forecast(train.values(), lead); }

}  // namespace tempcast
