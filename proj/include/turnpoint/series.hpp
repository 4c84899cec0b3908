#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace turnpoint {

using Index = std::int64_t;

namespace detail {

inline void require_all_finite(std::span<const double> values, const char* who) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(who) + ": values must be finite");
        }
    }
}

}  // namespace detail

// Contiguous integer index range [start, end], both endpoints included.
class IndexWindow {
public:
    IndexWindow(Index start, Index end) : start_(start), end_(end) {
        if (end < start) {
            throw std::invalid_argument("IndexWindow: end must not precede start");
        }
        if (length() < 2) {
            throw std::invalid_argument("IndexWindow: need at least two indices");
        }
    }

    Index start() const noexcept { return start_; }
    Index end() const noexcept { return end_; }
    std::size_t length() const noexcept { return static_cast<std::size_t>(end_ - start_ + 1); }
    bool contains(Index t) const noexcept { return t >= start_ && t <= end_; }
    Index index_at(std::size_t offset) const noexcept { return start_ + static_cast<Index>(offset); }

    std::size_t offset_of(Index t) const {
        if (!contains(t)) {
            throw std::out_of_range("IndexWindow: index " + std::to_string(t) + " outside window");
        }
        return static_cast<std::size_t>(t - start_);
    }

    bool operator==(const IndexWindow&) const = default;

private:
    Index start_;
    Index end_;
};

// Observed series; element i belongs to index window.start() + i.
class TimeSeries {
public:
    TimeSeries(IndexWindow window, std::vector<double> values)
        : window_(window), values_(std::move(values)) {
        if (values_.size() != window_.length()) {
            throw std::invalid_argument("TimeSeries: values length must match window length");
        }
        detail::require_all_finite(values_, "TimeSeries");
    }

    const IndexWindow& window() const noexcept { return window_; }
    std::span<const double> values() const noexcept { return values_; }
    double at(Index t) const { return values_[window_.offset_of(t)]; }

private:
    IndexWindow window_;
    std::vector<double> values_;
};

// Deterministic location levels on the same index convention as TimeSeries.
class TrendSequence {
public:
    TrendSequence(IndexWindow window, std::vector<double> levels)
        : window_(window), levels_(std::move(levels)) {
        if (levels_.size() != window_.length()) {
            throw std::invalid_argument("TrendSequence: levels length must match window length");
        }
        detail::require_all_finite(levels_, "TrendSequence");
    }

    const IndexWindow& window() const noexcept { return window_; }
    std::span<const double> levels() const noexcept { return levels_; }
    double at(Index t) const { return levels_[window_.offset_of(t)]; }

private:
    IndexWindow window_;
    std::vector<double> levels_;
};

// Exponential noise; rate is in inverse value units.
class NoiseModel {
public:
    explicit NoiseModel(double rate) : rate_(rate) {
        if (!(rate > 0.0) || !std::isfinite(rate)) {
            throw std::invalid_argument("NoiseModel: rate must be positive and finite");
        }
    }

    double rate() const noexcept { return rate_; }
    double mean() const noexcept { return 1.0 / rate_; }

private:
    double rate_;
};

// Discrete probability mass of the turning-point index over a window.
class LocationDistribution {
public:
    LocationDistribution(IndexWindow window, std::vector<double> mass)
        : window_(window), mass_(std::move(mass)) {
        if (mass_.size() != window_.length()) {
            throw std::invalid_argument("LocationDistribution: mass length must match window length");
        }
        double total = 0.0;
        for (double m : mass_) {
            if (!(m >= 0.0) || !std::isfinite(m)) {
                throw std::invalid_argument("LocationDistribution: mass entries must be nonnegative");
            }
            total += m;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("LocationDistribution: mass must sum to 1 (got " +
                                        std::to_string(total) + ")");
        }
    }

    const IndexWindow& window() const noexcept { return window_; }
    std::span<const double> mass() const noexcept { return mass_; }
    double mass_at(Index t) const { return mass_[window_.offset_of(t)]; }

private:
    IndexWindow window_;
    std::vector<double> mass_;
};

// Two-sided interval of indices at a nominal confidence level.
class ConfidenceInterval {
public:
    ConfidenceInterval(Index left, Index right, double level)
        : left_(left), right_(right), level_(level) {
        if (right < left) {
            throw std::invalid_argument("ConfidenceInterval: right endpoint must not precede left");
        }
        if (!(level > 0.0 && level < 1.0)) {
            throw std::invalid_argument("ConfidenceInterval: level must lie in (0, 1)");
        }
    }

    Index left() const noexcept { return left_; }
    Index right() const noexcept { return right_; }
    double level() const noexcept { return level_; }
    Index length() const noexcept { return right_ - left_; }
    bool contains(Index t) const noexcept { return t >= left_ && t <= right_; }

    bool operator==(const ConfidenceInterval&) const = default;

private:
    Index left_;
    Index right_;
    double level_;
};

}  // namespace turnpoint
