#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "turnpoint/series.hpp"

namespace turnpoint {

// Area enclosed between a horizontal line at height u and the trend levels
// lying below it. Levels are kept sorted so each query is one binary search:
// with k levels <= u summing to S_k, the area is k*u - S_k.
class AreaFunction {
public:
    explicit AreaFunction(const TrendSequence& trend)
        : sorted_levels_(trend.levels().begin(), trend.levels().end()) {
        std::sort(sorted_levels_.begin(), sorted_levels_.end());
        prefix_sums_.resize(sorted_levels_.size());
        std::partial_sum(sorted_levels_.begin(), sorted_levels_.end(), prefix_sums_.begin());
    }

    double operator()(double u) const {
        if (!std::isfinite(u)) {
            throw std::invalid_argument("AreaFunction: height must be finite");
        }
        const auto first_above = std::upper_bound(sorted_levels_.begin(), sorted_levels_.end(), u);
        const auto count = static_cast<std::size_t>(first_above - sorted_levels_.begin());
        if (count == 0) {
            return 0.0;
        }
        return static_cast<double>(count) * u - prefix_sums_[count - 1];
    }

    std::span<const double> sorted_levels() const noexcept { return sorted_levels_; }
    std::span<const double> prefix_sums() const noexcept { return prefix_sums_; }

private:
    std::vector<double> sorted_levels_;
    std::vector<double> prefix_sums_;
};

inline double area_below(const TrendSequence& trend, double u) {
    return AreaFunction(trend)(u);
}

// Exact distribution of the argmin index when the series is the trend plus
// i.i.d. exponential noise. The mass at index s is the survival integral
// of exp(-rate * area_below(u)) started at the level of s. Between two
// consecutive sorted levels the area function is affine with integer slope
// equal to the number of levels below, so every segment integrates in closed
// form and the unbounded last segment contributes exp(-rate*B)/n. No
// quadrature, no truncation of the upper limit.
inline LocationDistribution location_distribution(const TrendSequence& trend, const NoiseModel& noise) {
    const std::span<const double> levels = trend.levels();
    const std::size_t n = levels.size();
    const double rate = noise.rate();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&levels](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });

    // Contribution of the segment starting at each sorted level. Duplicate
    // levels give zero-width segments and contribute nothing.
    std::vector<double> segment(n);
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double width = levels[order[k + 1]] - levels[order[k]];
        const double below = static_cast<double>(k + 1);
        segment[k] = -std::expm1(-rate * below * width) * std::exp(-rate * area) / below;
        area += below * width;
    }
    segment[n - 1] = std::exp(-rate * area) / static_cast<double>(n);

    // The mass at a level is the tail sum of the segments above it; summing
    // from the smallest contributions up keeps the accumulation accurate.
    std::vector<double> mass(n);
    double tail = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        tail += segment[k];
        mass[order[k]] = tail;
    }
    for (double& m : mass) {
        if (m < 1e-300) {
            m = 0.0;
        }
    }
    return LocationDistribution(trend.window(), std::move(mass));
}

inline double expectation(const LocationDistribution& dist) {
    const std::span<const double> mass = dist.mass();
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        acc += static_cast<double>(dist.window().index_at(i)) * mass[i];
    }
    return acc;
}

// Smallest index whose cumulative mass reaches p; no interpolation, so the
// induced intervals never undercover the discrete distribution.
inline Index quantile(const LocationDistribution& dist, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("quantile: probability must lie in (0, 1)");
    }
    const std::span<const double> mass = dist.mass();
    double cdf = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        cdf += mass[i];
        if (cdf >= p) {
            return dist.window().index_at(i);
        }
    }
    // Accumulated rounding can leave the final cdf a few ulp short of 1.
    return dist.window().end();
}

inline ConfidenceInterval confidence_interval(const LocationDistribution& dist, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence_interval: level must lie in (0, 1)");
    }
    const double alpha = 1.0 - level;
    return ConfidenceInterval(quantile(dist, alpha / 2.0), quantile(dist, 1.0 - alpha / 2.0), level);
}

}  // namespace turnpoint
