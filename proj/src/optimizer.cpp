#include "tempcast/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "tempcast/errors.hpp"

namespace tempcast {

namespace {

using Point = std::tuple<double, double, double>;

void validate_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw Error(ErrorCode::InvalidConfig, std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!(axis[i] >= 0.0 && axis[i] <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, std::string(name) + " grid value outside [0, 1]");
        }
        if (i > 0 && !(axis[i] > axis[i - 1])) {
            throw Error(ErrorCode::InvalidConfig, std::string(name) + " grid is not strictly increasing");
        }
    }
}

double axis_spacing(const std::vector<double>& axis) {
    if (axis.size() < 2) return 0.0;
    return (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
}

// `count` points centred on `centre`, spanning +-half_width, clipped to [0, 1].
std::vector<double> refine_axis(double centre, double half_width, std::size_t count) {
    if (count < 2 || half_width <= 0.0) return {centre};
    const double step = 2.0 * half_width / static_cast<double>(count - 1);
    const double mid = static_cast<double>(count - 1) / 2.0;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        out.push_back(std::clamp(centre + (static_cast<double>(j) - mid) * step, 0.0, 1.0));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Objective on a pre-initialized state. Scoring starts at `first_scored`.
double score(const HWState& initial, std::span<const double> train, const SmoothingParams& params,
             std::size_t first_scored) {
    HWState state = initial;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (i >= first_scored) {
            const double err = state.level + state.trend + state.seasonal[state.phase] - train[i];
            sum_sq += err * err;
        }
        hw_update_in_place(state, train[i], params);
    }
    return std::sqrt(sum_sq / static_cast<double>(train.size() - first_scored));
}

void require_scorable(std::size_t size, std::size_t season_length) {
    if (size < 2 * season_length + 1) {
        throw Error(ErrorCode::TooShort, "one-step objective needs at least " +
                                             std::to_string(2 * season_length + 1) + " values, got " +
                                             std::to_string(size));
    }
}

struct Candidate {
    double objective;
    Point point;
};

// Strict "better than" with lexicographic tie-break; NaN never wins.
bool better(const Candidate& a, const Candidate& b) {
    if (std::isnan(a.objective)) return false;
    if (std::isnan(b.objective)) return true;
    if (a.objective != b.objective) return a.objective < b.objective;
    return a.point < b.point;
}

}  // namespace

void GridSpec::validate() const {
    validate_axis(alpha_grid, "alpha");
    validate_axis(beta_grid, "beta");
    validate_axis(gamma_grid, "gamma");
    if (refine_rounds < 0) throw Error(ErrorCode::InvalidConfig, "refine_rounds must be >= 0");
    if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "refine_shrink must lie in (0, 1)");
    }
}

std::vector<double> unit_grid(std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {0.5};
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return out;
}

GridSpec grid_preset(std::string_view name) {
    auto make = [](std::size_t points, int rounds) {
        return GridSpec{unit_grid(points), unit_grid(points), unit_grid(points), rounds, 0.5};
    };
    if (name == "coarse") return make(5, 1);
    if (name == "default") return make(11, 2);
    if (name == "fine") return make(21, 3);
    throw Error(ErrorCode::InvalidConfig, "unknown grid preset '" + std::string(name) + "'");
}

GridSpec default_grid() { return grid_preset("default"); }

double one_step_rmse(std::span<const double> train, const SmoothingParams& params) {
    params.validate();
    require_scorable(train.size(), params.season_length);
    return score(init_state(train, params), train, params, 2 * params.season_length);
}

double one_step_rmse(const TimeSeries& train, const SmoothingParams& params) {
    return one_step_rmse(train.values(), params);
}

FitResult grid_search(std::span<const double> train, const GridSpec& spec, std::size_t season_length) {
    spec.validate();
    require_scorable(train.size(), season_length);

    // The initial state does not depend on the coefficients.
    SmoothingParams probe{0.0, 0.0, 0.0, season_length};
    probe.validate();
    const HWState initial = init_state(train, probe);
    const std::size_t first_scored = 2 * season_length;

    std::set<Point> seen;
    FitResult result;
    Candidate best{std::numeric_limits<double>::quiet_NaN(), {}};
    bool have_best = false;

    auto sweep = [&](const std::vector<double>& as, const std::vector<double>& bs, const std::vector<double>& gs) {
        // Enumerate first, score, then reduce in enumeration order.
        std::vector<Point> points;
        for (double a : as)
            for (double b : bs)
                for (double g : gs)
                    if (seen.insert({a, b, g}).second) points.emplace_back(a, b, g);
        for (const auto& p : points) {
            const SmoothingParams params{std::get<0>(p), std::get<1>(p), std::get<2>(p), season_length};
            const Candidate c{score(initial, train, params, first_scored), p};
            ++result.evaluations;
            if (!have_best || better(c, best)) {
                best = c;
                have_best = true;
            }
        }
        result.round_best.push_back(best.objective);
    };

    sweep(spec.alpha_grid, spec.beta_grid, spec.gamma_grid);

    double spacing_a = axis_spacing(spec.alpha_grid);
    double spacing_b = axis_spacing(spec.beta_grid);
    double spacing_g = axis_spacing(spec.gamma_grid);
    for (int round = 0; round < spec.refine_rounds; ++round) {
        const auto [ca, cb, cg] = best.point;
        const double ha = spacing_a * spec.refine_shrink;
        const double hb = spacing_b * spec.refine_shrink;
        const double hg = spacing_g * spec.refine_shrink;
        sweep(refine_axis(ca, ha, spec.alpha_grid.size()), refine_axis(cb, hb, spec.beta_grid.size()),
              refine_axis(cg, hg, spec.gamma_grid.size()));
        auto next_spacing = [](double half, std::size_t n) {
            return n < 2 ? 0.0 : 2.0 * half / static_cast<double>(n - 1);
        };
        spacing_a = next_spacing(ha, spec.alpha_grid.size());
        spacing_b = next_spacing(hb, spec.beta_grid.size());
        spacing_g = next_spacing(hg, spec.gamma_grid.size());
    }

    result.params = SmoothingParams{std::get<0>(best.point), std::get<1>(best.point), std::get<2>(best.point),
                                    season_length};
    result.in_sample_rmse = best.objective;
    return result;
}

FitResult grid_search(const TimeSeries& train, const GridSpec& spec, std::size_t season_length) {
    return grid_search(train.values(), spec, season_length);
}

}  // namespace tempcast
