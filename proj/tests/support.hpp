#pragma once

// Test-only generators and independent oracles. Nothing here calls into the
// code path it is used to check.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "tempcast/date.hpp"
#include "tempcast/timeseries.hpp"

namespace testing {

inline tempcast::Date ymd(int y, unsigned m, unsigned d) {
    return tempcast::Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

/// a_i = level + slope * i + season[i mod L]
inline std::vector<double> noiseless(std::size_t n, double level, double slope, const std::vector<double>& season) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = level + slope * static_cast<double>(i) + season[i % season.size()];
    return out;
}

/// Zero-sum random seasonal pattern of length L.
inline std::vector<double> random_season(std::size_t L, double amplitude, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    std::vector<double> c(L);
    double sum = 0.0;
    for (auto& v : c) {
        v = u(rng);
        sum += v;
    }
    for (auto& v : c) v -= sum / static_cast<double>(L);
    return c;
}

/// Annual sinusoid around `mean` with a linear trend and Gaussian noise.
inline std::vector<double> synthetic_annual(std::size_t years, double mean, double amplitude, double slope_per_year,
                                            double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    const std::size_t n = years * 365;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i);
        out[i] = mean + slope_per_year * t / 365.0 -
                 amplitude * std::cos(2.0 * std::numbers::pi * t / 365.0) + noise(rng);
    }
    return out;
}

inline tempcast::TimeSeries series_from(std::vector<double> values, tempcast::Date start = ymd(2015, 1, 1)) {
    return tempcast::TimeSeries(start, std::move(values), "TEST");
}

// ------------------------------------------------------------------ oracles

inline double brute_rmse(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum / static_cast<double>(a.size()));
}

inline double brute_mean(const std::vector<double>& a) {
    double sum = 0.0;
    for (double v : a) sum += v;
    return sum / static_cast<double>(a.size());
}

/// Holt-Winters written against explicit, ever-growing histories so the
/// forecast can use the textbook index t - L + 1 + ((m - 1) mod L) directly.
/// Time index -1 is the initial state; c for times -L..-1 holds the initial
/// corrections.
struct ExplicitHoltWinters {
    std::size_t L;
    double alpha, beta, gamma;
    std::vector<double> s;  // s[t + 1]
    std::vector<double> b;  // b[t + 1]
    std::vector<double> c;  // c[t + L]
    long t = -1;

    ExplicitHoltWinters(std::size_t L_, double a, double bt, double g, double level0, double trend0,
                        const std::vector<double>& season0)
        : L(L_), alpha(a), beta(bt), gamma(g), s{level0}, b{trend0}, c(season0) {}

    double c_at(long time) const { return c.at(static_cast<std::size_t>(time + static_cast<long>(L))); }

    void observe(double a) {
        const long next = t + 1;
        const double s_prev = s.back();
        const double b_prev = b.back();
        const double c_old = c_at(next - static_cast<long>(L));
        const double s_new = alpha * (a - c_old) + (1 - alpha) * (s_prev + b_prev);
        const double b_new = beta * (s_new - s_prev) + (1 - beta) * b_prev;
        const double c_new = gamma * (a - s_new) + (1 - gamma) * c_old;
        s.push_back(s_new);
        b.push_back(b_new);
        c.push_back(c_new);
        t = next;
    }

    long seasonal_index(int m) const {
        return t - static_cast<long>(L) + 1 + static_cast<long>((m - 1) % static_cast<int>(L));
    }

    double forecast(int m) const { return s.back() + m * b.back() + c_at(seasonal_index(m)); }
};

/// Classic de-trended seasonal-average initialization, written out longhand.
struct OracleInit {
    double level, trend;
    std::vector<double> season;
};

inline OracleInit oracle_init(const std::vector<double>& x, std::size_t L) {
    const std::size_t K = x.size() / L;
    std::vector<double> mean(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t p = 0; p < L; ++p) mean[k] += x[k * L + p];
        mean[k] /= static_cast<double>(L);
    }
    OracleInit init;
    init.trend = (mean[1] - mean[0]) / static_cast<double>(L);
    init.level = mean[0] - init.trend * (static_cast<double>(L) + 1.0) / 2.0;
    init.season.assign(L, 0.0);
    for (std::size_t p = 0; p < L; ++p) {
        double dev = 0.0;
        for (std::size_t k = 0; k < K; ++k) dev += x[k * L + p] - mean[k];
        init.season[p] = dev / static_cast<double>(K) - init.trend * (static_cast<double>(p) - (L - 1.0) / 2.0);
    }
    return init;
}

inline double oracle_one_step_rmse(const std::vector<double>& x, std::size_t L, double a, double b, double g) {
    const auto init = oracle_init(x, L);
    ExplicitHoltWinters hw(L, a, b, g, init.level, init.trend, init.season);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i >= 2 * L) {
            const double e = hw.forecast(1) - x[i];
            sum += e * e;
            ++count;
        }
        hw.observe(x[i]);
    }
    return std::sqrt(sum / static_cast<double>(count));
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace testing
