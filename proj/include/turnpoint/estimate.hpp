#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "turnpoint/exact.hpp"
#include "turnpoint/series.hpp"

namespace turnpoint {

// Half-width of the sliding window used to estimate the trend.
class Bandwidth {
public:
    explicit Bandwidth(int half_width) : half_width_(half_width) {
        if (half_width < 1) {
            throw std::invalid_argument("Bandwidth: half-width must be at least 1");
        }
    }

    int value() const noexcept { return half_width_; }

private:
    int half_width_;
};

// Running minimum over [t-h, t+h]; windows are truncated at the series
// boundaries so the estimate is defined on the whole window. Monotone-deque
// scan, O(n) overall.
inline TrendSequence sliding_min_trend(const TimeSeries& series, Bandwidth bandwidth) {
    const std::span<const double> values = series.values();
    const std::size_t n = values.size();
    const std::size_t h = static_cast<std::size_t>(bandwidth.value());
    if (2 * h + 1 > n) {
        throw std::invalid_argument("sliding_min_trend: window of 2h+1 points exceeds series length");
    }

    std::vector<double> levels(n);
    std::deque<std::size_t> candidates;  // offsets of increasing values
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t last = std::min(i + h, n - 1);
        for (; next <= last; ++next) {
            while (!candidates.empty() && values[candidates.back()] >= values[next]) {
                candidates.pop_back();
            }
            candidates.push_back(next);
        }
        while (candidates.front() + h < i) {
            candidates.pop_front();
        }
        levels[i] = values[candidates.front()];
    }
    return TrendSequence(series.window(), std::move(levels));
}

// Observation minus estimated level; nonnegative whenever the trend came
// from sliding_min_trend.
inline std::vector<double> residuals(const TimeSeries& series, const TrendSequence& trend) {
    if (series.window() != trend.window()) {
        throw std::invalid_argument("residuals: series and trend windows differ");
    }
    const std::span<const double> values = series.values();
    const std::span<const double> levels = trend.levels();
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = values[i] - levels[i];
    }
    return out;
}

// Exponential maximum-likelihood rate: the reciprocal of the residual mean,
// zeros included.
inline NoiseModel fit_rate(std::span<const double> residual_values) {
    if (residual_values.empty()) {
        throw std::invalid_argument("fit_rate: no residuals");
    }
    const double mean = std::accumulate(residual_values.begin(), residual_values.end(), 0.0) /
                        static_cast<double>(residual_values.size());
    if (!(mean > 0.0)) {
        throw std::invalid_argument("fit_rate: residuals are all zero or have nonpositive mean");
    }
    return NoiseModel(1.0 / mean);
}

struct EstimationReport {
    Index tau_hat;
    double rate_hat;
    TrendSequence trend_hat;
    LocationDistribution distribution;
    ConfidenceInterval interval;
    int bandwidth;
};

// Full plug-in pipeline: estimate the trend by sliding minima, fit the noise
// rate from the residuals, evaluate the exact argmin distribution at the
// estimates, and read the interval off its quantiles. Ties in the estimated
// trend resolve to the smallest index.
inline EstimationReport estimate_minimum_location(const TimeSeries& series, Bandwidth bandwidth,
                                                  double level) {
    TrendSequence trend = sliding_min_trend(series, bandwidth);
    const NoiseModel noise = fit_rate(residuals(series, trend));
    LocationDistribution dist = location_distribution(trend, noise);
    const ConfidenceInterval interval = confidence_interval(dist, level);

    const std::span<const double> levels = trend.levels();
    const std::size_t argmin =
        static_cast<std::size_t>(std::min_element(levels.begin(), levels.end()) - levels.begin());
    const Index tau_hat = trend.window().index_at(argmin);

    return EstimationReport{tau_hat,         noise.rate(), std::move(trend),
                            std::move(dist), interval,     bandwidth.value()};
}

}  // namespace turnpoint
