#include "turnpoint/estimate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mc_support.hpp"
#include "turnpoint/random.hpp"

using namespace turnpoint;
using Catch::Approx;

namespace {

TimeSeries make_series(std::vector<double> values, Index start = 1) {
    const IndexWindow window(start, start + static_cast<Index>(values.size()) - 1);
    return TimeSeries(window, std::move(values));
}

std::vector<double> sliding_min_direct(const std::vector<double>& values, int h) {
    const int n = static_cast<int>(values.size());
    std::vector<double> out(values.size());
    for (int i = 0; i < n; ++i) {
        double best = values[static_cast<std::size_t>(i)];
        for (int j = std::max(0, i - h); j <= std::min(n - 1, i + h); ++j) {
            best = std::min(best, values[static_cast<std::size_t>(j)]);
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

}  // namespace

TEST_CASE("sliding_min_trend on hand-checked windows", "[estimate][trend]") {
    const auto trend = sliding_min_trend(make_series({3.0, 1.0, 2.0, 5.0, 4.0}), Bandwidth(1));
    const std::vector<double> expected{1.0, 1.0, 1.0, 2.0, 4.0};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(trend.levels()[i] == expected[i]);
    }

    const auto monotone = sliding_min_trend(make_series({1.0, 2.0, 3.0, 4.0, 5.0}), Bandwidth(1));
    const std::vector<double> expected_monotone{1.0, 1.0, 2.0, 3.0, 4.0};
    for (std::size_t i = 0; i < expected_monotone.size(); ++i) {
        CHECK(monotone.levels()[i] == expected_monotone[i]);
    }
}

TEST_CASE("sliding_min_trend at the widest admissible bandwidth", "[estimate][trend]") {
    // With 2h+1 equal to the length, every window reaching the central
    // minimum collapses to the global minimum; with the minimum at the
    // center this holds at every index.
    const auto trend = sliding_min_trend(make_series({5.0, 3.0, 1.0, 2.0, 4.0}), Bandwidth(2));
    for (double level : trend.levels()) {
        CHECK(level == 1.0);
    }

    CHECK_THROWS_AS(sliding_min_trend(make_series({1.0, 2.0, 3.0, 4.0, 5.0}), Bandwidth(3)),
                    std::invalid_argument);
}

TEST_CASE("sliding_min_trend properties", "[estimate][trend]") {
    std::mt19937_64 rng(321);
    for (int rep = 0; rep < 25; ++rep) {
        const auto values = oracle::random_levels(64, rng, -2.0, 2.0);
        const TimeSeries series = make_series(std::vector<double>(values));

        // Matches the direct per-window scan.
        for (int h : {1, 2, 5, 13, 31}) {
            const auto trend = sliding_min_trend(series, Bandwidth(h));
            const auto direct = sliding_min_direct(values, h);
            for (std::size_t i = 0; i < values.size(); ++i) {
                CHECK(trend.levels()[i] == direct[i]);
                CHECK(trend.levels()[i] <= values[i]);
            }
        }

        // Pointwise monotone in the bandwidth.
        const auto narrow = sliding_min_trend(series, Bandwidth(3));
        const auto wide = sliding_min_trend(series, Bandwidth(4));
        for (std::size_t i = 0; i < values.size(); ++i) {
            CHECK(wide.levels()[i] <= narrow.levels()[i]);
        }

        // Commutes with adding a constant.
        std::vector<double> shifted = values;
        for (double& v : shifted) {
            v += 11.5;
        }
        const auto shifted_trend = sliding_min_trend(make_series(std::move(shifted)), Bandwidth(3));
        for (std::size_t i = 0; i < values.size(); ++i) {
            CHECK(shifted_trend.levels()[i] == Approx(narrow.levels()[i] + 11.5).margin(1e-12));
        }
    }
}

TEST_CASE("residuals", "[estimate][residuals]") {
    const TimeSeries series = make_series({3.0, 1.0, 2.0, 5.0, 4.0});
    const TrendSequence trend(series.window(), {1.0, 1.0, 1.0, 2.0, 4.0});
    const auto eps = residuals(series, trend);
    const std::vector<double> expected{2.0, 0.0, 1.0, 3.0, 0.0};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(eps[i] == expected[i]);
    }

    const auto zero = residuals(series, TrendSequence(series.window(), {3.0, 1.0, 2.0, 5.0, 4.0}));
    for (double e : zero) {
        CHECK(e == 0.0);
    }

    // Adding a constant to the series cancels out of the residuals.
    std::vector<double> shifted_values{13.0, 11.0, 12.0, 15.0, 14.0};
    const TimeSeries shifted = make_series(std::move(shifted_values));
    const auto shifted_eps = residuals(shifted, sliding_min_trend(shifted, Bandwidth(1)));
    const auto base_eps = residuals(series, sliding_min_trend(series, Bandwidth(1)));
    for (std::size_t i = 0; i < base_eps.size(); ++i) {
        CHECK(shifted_eps[i] == Approx(base_eps[i]).margin(1e-12));
    }

    const TrendSequence mismatched(IndexWindow(0, 4), {1.0, 1.0, 1.0, 2.0, 4.0});
    CHECK_THROWS_AS(residuals(series, mismatched), std::invalid_argument);
}

TEST_CASE("fit_rate is the reciprocal residual mean", "[estimate][rate]") {
    const std::vector<double> constant{2.5, 2.5, 2.5};
    CHECK(fit_rate(constant).rate() == Approx(0.4).margin(1e-15));

    const std::vector<double> mixed{0.0, 1.0, 2.0, 3.0};
    CHECK(fit_rate(mixed).rate() == Approx(2.0 / 3.0).margin(1e-15));

    SECTION("consistent on exponential draws") {
        std::mt19937_64 rng(2222);
        std::exponential_distribution<double> noise(2.0);
        std::vector<double> sample(100'000);
        for (double& x : sample) {
            x = noise(rng);
        }
        CHECK(fit_rate(sample).rate() == Approx(2.0).margin(0.02));
    }

    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(fit_rate(zeros), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("estimate_minimum_location pins a sharp minimum", "[estimate][pipeline]") {
    // V-shaped series with near-zero noise: the sliding minimum flattens the
    // bottom into 2h+1 tied levels, so the interval snaps to that plateau.
    RandomStream stream(9001);
    const IndexWindow window(0, 100);
    std::vector<double> values(window.length());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = static_cast<double>(window.index_at(i));
        values[i] = std::abs(t - 50.0) + stream.exponential(1e3);
    }
    const TimeSeries series(window, std::move(values));

    const EstimationReport narrow = estimate_minimum_location(series, Bandwidth(1), 0.95);
    CHECK(narrow.interval.contains(50));
    CHECK(narrow.interval.length() <= 3);

    const EstimationReport wide = estimate_minimum_location(series, Bandwidth(2), 0.95);
    CHECK(wide.interval.contains(50));
    CHECK(wide.interval.length() <= 2 * 2);
    CHECK(wide.tau_hat >= 48);
    CHECK(wide.tau_hat <= 52);
}

TEST_CASE("estimate_minimum_location is deterministic and consistent", "[estimate][pipeline]") {
    RandomStream stream(555);
    const IndexWindow window(1, 400);
    std::vector<double> values(window.length());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = static_cast<double>(window.index_at(i));
        values[i] = 0.01 * std::abs(t - 200.0) + stream.exponential(1.0);
    }
    const TimeSeries series(window, std::move(values));

    const EstimationReport first = estimate_minimum_location(series, Bandwidth(8), 0.95);
    const EstimationReport second = estimate_minimum_location(series, Bandwidth(8), 0.95);

    CHECK(first.tau_hat == second.tau_hat);
    CHECK(first.rate_hat == second.rate_hat);
    CHECK(first.interval == second.interval);
    for (std::size_t i = 0; i < first.distribution.mass().size(); ++i) {
        CHECK(first.distribution.mass()[i] == second.distribution.mass()[i]);
    }

    // tau_hat is the argmin of the estimated trend, smallest index on ties.
    const auto levels = first.trend_hat.levels();
    const auto argmin = std::min_element(levels.begin(), levels.end()) - levels.begin();
    CHECK(first.tau_hat == window.index_at(static_cast<std::size_t>(argmin)));

    // The interval endpoints are the distribution's quantiles.
    CHECK(first.interval.left() == quantile(first.distribution, 0.025));
    CHECK(first.interval.right() == quantile(first.distribution, 0.975));
}
