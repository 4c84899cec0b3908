#pragma once

// Brute-force and Monte Carlo oracles shared by the unit and acceptance
// suites. These stay independent of the library code paths they check:
// sums are written out directly and draws use the std:: distributions, not
// the library's stream.

#include <algorithm>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace oracle {

inline double area_below_direct(std::span<const double> levels, double u) {
    double area = 0.0;
    for (double level : levels) {
        if (level <= u) {
            area += u - level;
        }
    }
    return area;
}

inline std::vector<double> argmin_frequencies(std::span<const double> levels, double rate,
                                              int draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> noise(rate);
    std::vector<long> counts(levels.size(), 0);
    std::vector<double> sample(levels.size());
    for (int d = 0; d < draws; ++d) {
        for (std::size_t i = 0; i < sample.size(); ++i) {
            sample[i] = levels[i] + noise(rng);
        }
        const std::size_t argmin = static_cast<std::size_t>(
            std::min_element(sample.begin(), sample.end()) - sample.begin());
        counts[argmin] += 1;
    }
    std::vector<double> freq(levels.size());
    for (std::size_t i = 0; i < freq.size(); ++i) {
        freq[i] = static_cast<double>(counts[i]) / static_cast<double>(draws);
    }
    return freq;
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += std::abs(p[i] - q[i]);
    }
    return acc / 2.0;
}

inline std::vector<double> random_levels(std::size_t n, std::mt19937_64& rng, double lo = 0.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> uniform(lo, hi);
    std::vector<double> levels(n);
    for (double& level : levels) {
        level = uniform(rng);
    }
    return levels;
}

}  // namespace oracle
