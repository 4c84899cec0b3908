#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "turnpoint/estimate.hpp"
#include "turnpoint/random.hpp"
#include "turnpoint/trends.hpp"

namespace turnpoint {

inline TimeSeries sample_series(const TrendSequence& trend, const NoiseModel& noise,
                                RandomStream& stream) {
    std::vector<double> values(trend.levels().begin(), trend.levels().end());
    for (double& v : values) {
        v += stream.exponential(noise.rate());
    }
    return TimeSeries(trend.window(), std::move(values));
}

using TrendSpec = std::variant<PiecewiseLinearTrendSpec, ExponentialTrendSpec>;

inline TrendSequence build_trend(const TrendSpec& spec) {
    return std::visit(
        [](const auto& s) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PiecewiseLinearTrendSpec>) {
                return linear_asymmetric_trend(s);
            } else {
                return exponential_trend(s);
            }
        },
        spec);
}

inline Index true_minimum_location(const TrendSpec& spec) {
    return std::visit([](const auto& s) { return s.t0; }, spec);
}

struct StudyConfig {
    TrendSpec trend_spec;
    double noise_rate = 1.0;
    int realizations = 200;
    std::vector<int> bandwidths{5, 8, 11, 14, 17, 20};
    double level = 0.95;
    std::uint64_t seed = 0;
};

struct CoverageRow {
    int bandwidth;
    double coverage_rate;
    double mean_interval_length;
};

struct CoverageTable {
    std::vector<CoverageRow> rows;  // ascending bandwidth
};

// Monte Carlo study of interval coverage and length over fresh realizations.
// Every replicate draws from its own stream keyed by (seed, bandwidth,
// replicate) and lands in a slot fixed by its replicate index, so the table
// is identical whether replicates run serially or across threads.
inline CoverageTable coverage_study(const StudyConfig& config, unsigned threads = 1) {
    if (config.realizations < 1) {
        throw std::invalid_argument("coverage_study: need at least one realization");
    }
    if (config.bandwidths.empty()) {
        throw std::invalid_argument("coverage_study: need at least one bandwidth");
    }
    if (!(config.level > 0.0 && config.level < 1.0)) {
        throw std::invalid_argument("coverage_study: level must lie in (0, 1)");
    }

    const TrendSequence trend = build_trend(config.trend_spec);
    const Index true_location = true_minimum_location(config.trend_spec);
    const NoiseModel noise(config.noise_rate);

    std::vector<int> bandwidths = config.bandwidths;
    std::sort(bandwidths.begin(), bandwidths.end());
    bandwidths.erase(std::unique(bandwidths.begin(), bandwidths.end()), bandwidths.end());
    for (int h : bandwidths) {
        if (h < 1 || 2 * static_cast<std::size_t>(h) + 1 > trend.window().length()) {
            throw std::invalid_argument("coverage_study: bandwidth " + std::to_string(h) +
                                        " is not admissible for the window");
        }
    }

    const int reps = config.realizations;
    CoverageTable table;
    table.rows.reserve(bandwidths.size());
    for (int h : bandwidths) {
        std::vector<char> hit(static_cast<std::size_t>(reps), 0);
        std::vector<Index> lengths(static_cast<std::size_t>(reps), 0);

        auto run_block = [&](int first, int past) {
            for (int r = first; r < past; ++r) {
                RandomStream stream = RandomStream::keyed(config.seed, static_cast<std::uint64_t>(h),
                                                          static_cast<std::uint64_t>(r));
                const TimeSeries series = sample_series(trend, noise, stream);
                const EstimationReport report =
                    estimate_minimum_location(series, Bandwidth(h), config.level);
                hit[static_cast<std::size_t>(r)] = report.interval.contains(true_location) ? 1 : 0;
                lengths[static_cast<std::size_t>(r)] = report.interval.length();
            }
        };

        if (threads <= 1 || reps < 2) {
            run_block(0, reps);
        } else {
            const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(reps));
            const int chunk = (reps + static_cast<int>(workers) - 1) / static_cast<int>(workers);
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            for (unsigned w = 0; w < workers; ++w) {
                const int first = static_cast<int>(w) * chunk;
                const int past = std::min(reps, first + chunk);
                pool.emplace_back([&, w, first, past] {
                    try {
                        run_block(first, past);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (std::thread& t : pool) {
                t.join();
            }
            for (const std::exception_ptr& e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        }

        // Counts and index lengths are integers, so these sums are exact and
        // independent of the replicate schedule.
        long hits = 0;
        long total_length = 0;
        for (int r = 0; r < reps; ++r) {
            hits += hit[static_cast<std::size_t>(r)];
            total_length += lengths[static_cast<std::size_t>(r)];
        }
        table.rows.push_back({h, static_cast<double>(hits) / static_cast<double>(reps),
                              static_cast<double>(total_length) / static_cast<double>(reps)});
    }
    return table;
}

}  // namespace turnpoint
