#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "turnpoint/series.hpp"

namespace turnpoint {

// V-shaped trend with different slopes on either side of the minimum at t0.
struct PiecewiseLinearTrendSpec {
    double left_slope;
    double right_slope;
    Index t0;
    IndexWindow window;

    PiecewiseLinearTrendSpec(double left_slope_, double right_slope_, Index t0_, IndexWindow window_)
        : left_slope(left_slope_), right_slope(right_slope_), t0(t0_), window(window_) {
        if (!(left_slope > 0.0 && std::isfinite(left_slope)) ||
            !(right_slope > 0.0 && std::isfinite(right_slope))) {
            throw std::invalid_argument("PiecewiseLinearTrendSpec: slopes must be positive");
        }
        if (!window.contains(t0)) {
            throw std::invalid_argument("PiecewiseLinearTrendSpec: t0 must lie inside the window");
        }
    }
};

// Exponential decay toward the minimum at t0 followed by a saturating
// recovery; left_amplitude scales the decay, right_amplitude is the
// recovery asymptote.
struct ExponentialTrendSpec {
    double left_rate;
    double right_rate;
    double left_amplitude;
    double right_amplitude;
    Index t0;
    IndexWindow window;

    ExponentialTrendSpec(double left_rate_, double right_rate_, Index t0_, IndexWindow window_,
                         double left_amplitude_ = 2.0, double right_amplitude_ = 4.0)
        : left_rate(left_rate_),
          right_rate(right_rate_),
          left_amplitude(left_amplitude_),
          right_amplitude(right_amplitude_),
          t0(t0_),
          window(window_) {
        if (!(left_rate > 0.0 && std::isfinite(left_rate)) ||
            !(right_rate > 0.0 && std::isfinite(right_rate))) {
            throw std::invalid_argument("ExponentialTrendSpec: rates must be positive");
        }
        if (!(left_amplitude > 0.0 && std::isfinite(left_amplitude)) ||
            !(right_amplitude > 0.0 && std::isfinite(right_amplitude))) {
            throw std::invalid_argument("ExponentialTrendSpec: amplitudes must be positive");
        }
        if (!window.contains(t0)) {
            throw std::invalid_argument("ExponentialTrendSpec: t0 must lie inside the window");
        }
    }
};

inline TrendSequence linear_symmetric_trend(double slope, const IndexWindow& window) {
    if (!(slope > 0.0 && std::isfinite(slope))) {
        throw std::invalid_argument("linear_symmetric_trend: slope must be positive");
    }
    if (!window.contains(0)) {
        throw std::invalid_argument("linear_symmetric_trend: window must contain index 0");
    }
    std::vector<double> levels(window.length());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        levels[i] = slope * std::fabs(static_cast<double>(window.index_at(i)));
    }
    return TrendSequence(window, std::move(levels));
}

inline TrendSequence linear_asymmetric_trend(const PiecewiseLinearTrendSpec& spec) {
    std::vector<double> levels(spec.window.length());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Index t = spec.window.index_at(i);
        const double offset = static_cast<double>(t - spec.t0);
        levels[i] = t < spec.t0 ? -spec.left_slope * offset : spec.right_slope * offset;
    }
    return TrendSequence(spec.window, std::move(levels));
}

inline TrendSequence exponential_trend(const ExponentialTrendSpec& spec) {
    std::vector<double> levels(spec.window.length());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Index t = spec.window.index_at(i);
        const double offset = static_cast<double>(t - spec.t0);
        levels[i] = t < spec.t0 ? spec.left_amplitude * std::expm1(-spec.left_rate * offset)
                                : -spec.right_amplitude * std::expm1(-spec.right_rate * offset);
    }
    return TrendSequence(spec.window, std::move(levels));
}

// Mean argmin index, relative to the minimum location, of an asymmetric
// V-shaped trend with exponential noise over an unbounded index range.
// Negative when the left slope is the smaller one: the argmin drifts toward
// the shallow side. Derivation: the mean reduces to a sum of Gaussian-tail
// integrals over the slope range; replacing the sum by an integral gives
// -sqrt(2*pi/rate)/4 * (b-a)/sqrt(a*b*(a+b)), which matches the exact
// distribution's expectation to well under one index on wide windows.
inline double asymmetric_bias(double left_slope, double right_slope, double rate) {
    if (!(left_slope > 0.0) || !(right_slope > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("asymmetric_bias: slopes and rate must be positive");
    }
    const double shape = (right_slope - left_slope) /
                         std::sqrt(left_slope * right_slope * (left_slope + right_slope));
    return -std::sqrt(2.0 * std::numbers::pi / rate) / 4.0 * shape;
}

// Family of variables whose survival functions are powers G(y)^alpha_t of a
// common survival function.
class ProportionalFamily {
public:
    ProportionalFamily(IndexWindow window, std::vector<double> alphas)
        : window_(window), alphas_(std::move(alphas)) {
        if (alphas_.size() != window_.length()) {
            throw std::invalid_argument("ProportionalFamily: alphas length must match window length");
        }
        for (double a : alphas_) {
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw std::invalid_argument("ProportionalFamily: exponents must be positive");
            }
        }
    }

    const IndexWindow& window() const noexcept { return window_; }
    std::span<const double> alphas() const noexcept { return alphas_; }

private:
    IndexWindow window_;
    std::vector<double> alphas_;
};

// For a proportional family the argmin mass at s is alpha_s over the sum of
// all exponents, one division per entry.
inline LocationDistribution proportional_argmin_distribution(const ProportionalFamily& family) {
    const std::span<const double> alphas = family.alphas();
    const double total = std::accumulate(alphas.begin(), alphas.end(), 0.0);
    std::vector<double> mass(alphas.size());
    for (std::size_t i = 0; i < mass.size(); ++i) {
        mass[i] = alphas[i] / total;
    }
    return LocationDistribution(family.window(), std::move(mass));
}

// Strictly increasing levels are a sufficient condition for the shifted
// exponentials to be stochastically increasing under a common rate.
inline bool is_stochastically_increasing(const TrendSequence& trend) {
    const std::span<const double> levels = trend.levels();
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (!(levels[i - 1] < levels[i])) {
            return false;
        }
    }
    return true;
}

}  // namespace turnpoint
