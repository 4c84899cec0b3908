#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "turnpoint/estimate.hpp"
#include "turnpoint/simulate.hpp"

namespace turnpoint {

enum class SeriesLayout { detect, single_column, two_column };
enum class TableFormat { csv, json };

namespace detail {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, result.ptr);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ',' || line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        const std::size_t begin = pos;
        while (pos < line.size() && line[pos] != ',' && line[pos] != ' ' && line[pos] != '\t') {
            ++pos;
        }
        if (pos > begin) {
            fields.push_back(line.substr(begin, pos - begin));
        }
    }
    return fields;
}

inline bool parse_double(std::string_view token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

inline bool parse_index(std::string_view token, Index& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace detail

// Reads a delimited text series: one value per line, or index,value pairs on
// a contiguous integer index range. Lines starting with '#' and blank lines
// are skipped; fields split on commas or whitespace.
inline TimeSeries load_series(const std::filesystem::path& path,
                              SeriesLayout layout = SeriesLayout::detect) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_series: cannot open " + path.string());
    }

    std::vector<double> values;
    std::vector<Index> indices;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto fields = detail::split_fields(line);
        if (fields.empty() || fields.front().front() == '#') {
            continue;
        }
        if (layout == SeriesLayout::detect) {
            layout = fields.size() >= 2 ? SeriesLayout::two_column : SeriesLayout::single_column;
        }
        const std::size_t expected = layout == SeriesLayout::two_column ? 2 : 1;
        if (fields.size() != expected) {
            throw std::runtime_error("load_series: line " + std::to_string(line_number) +
                                     ": expected " + std::to_string(expected) + " field(s), got " +
                                     std::to_string(fields.size()));
        }

        double value = 0.0;
        if (!detail::parse_double(fields.back(), value) || !std::isfinite(value)) {
            throw std::runtime_error("load_series: line " + std::to_string(line_number) +
                                     ": cannot parse value '" + std::string(fields.back()) + "'");
        }
        if (layout == SeriesLayout::two_column) {
            Index index = 0;
            if (!detail::parse_index(fields.front(), index)) {
                throw std::runtime_error("load_series: line " + std::to_string(line_number) +
                                         ": cannot parse index '" + std::string(fields.front()) +
                                         "'");
            }
            if (!indices.empty() && index != indices.back() + 1) {
                throw std::runtime_error("load_series: line " + std::to_string(line_number) +
                                         ": non-contiguous index (expected " +
                                         std::to_string(indices.back() + 1) + ", got " +
                                         std::to_string(index) + ")");
            }
            indices.push_back(index);
        }
        values.push_back(value);
    }

    if (values.size() < 2) {
        throw std::runtime_error("load_series: " + path.string() +
                                 ": need at least two observations");
    }
    const Index start = indices.empty() ? 1 : indices.front();
    const Index end = start + static_cast<Index>(values.size()) - 1;
    return TimeSeries(IndexWindow(start, end), std::move(values));
}

inline void write_series(const TimeSeries& series, const std::filesystem::path& path,
                         SeriesLayout layout = SeriesLayout::detect) {
    if (layout == SeriesLayout::detect) {
        layout = series.window().start() == 1 ? SeriesLayout::single_column
                                              : SeriesLayout::two_column;
    }
    if (layout == SeriesLayout::single_column && series.window().start() != 1) {
        throw std::invalid_argument(
            "write_series: single-column layout requires the window to start at 1");
    }
    std::string out;
    const std::span<const double> values = series.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (layout == SeriesLayout::two_column) {
            out += std::to_string(series.window().index_at(i));
            out += ',';
        }
        out += detail::format_double(values[i]);
        out += '\n';
    }
    detail::write_text_file(path, out);
}

namespace detail {

inline std::string distribution_csv(const TrendSequence& trend, const LocationDistribution& dist) {
    std::string out = "index,trend,mass,log_mass\n";
    const std::span<const double> levels = trend.levels();
    const std::span<const double> mass = dist.mass();
    for (std::size_t i = 0; i < mass.size(); ++i) {
        out += std::to_string(trend.window().index_at(i));
        out += ',';
        out += format_double(levels[i]);
        out += ',';
        out += format_double(mass[i]);
        out += ',';
        if (mass[i] > 0.0) {  // zero mass leaves the log field empty
            out += format_double(std::log(mass[i]));
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json distribution_json(const TrendSequence& trend,
                                        const LocationDistribution& dist) {
    nlohmann::json rows = nlohmann::json::array();
    const std::span<const double> levels = trend.levels();
    const std::span<const double> mass = dist.mass();
    for (std::size_t i = 0; i < mass.size(); ++i) {
        rows.push_back({{"index", trend.window().index_at(i)},
                        {"trend", levels[i]},
                        {"mass", mass[i]}});
    }
    return rows;
}

}  // namespace detail

// Plot-ready columns (index, trend, mass, log_mass) for a distribution over
// a known or estimated trend.
inline void write_distribution(const TrendSequence& trend, const LocationDistribution& dist,
                               TableFormat format, const std::filesystem::path& path) {
    if (trend.window() != dist.window()) {
        throw std::invalid_argument("write_distribution: trend and distribution windows differ");
    }
    if (format == TableFormat::csv) {
        detail::write_text_file(path, detail::distribution_csv(trend, dist));
    } else {
        detail::write_text_file(path, detail::distribution_json(trend, dist).dump(2) + "\n");
    }
}

inline void write_report(const EstimationReport& report, TableFormat format,
                         const std::filesystem::path& path) {
    if (format == TableFormat::csv) {
        detail::write_text_file(path, detail::distribution_csv(report.trend_hat, report.distribution));
        return;
    }
    nlohmann::json doc = {
        {"tau_hat", report.tau_hat},
        {"rate_hat", report.rate_hat},
        {"bandwidth", report.bandwidth},
        {"interval",
         {{"left", report.interval.left()},
          {"right", report.interval.right()},
          {"level", report.interval.level()}}},
        {"distribution", detail::distribution_json(report.trend_hat, report.distribution)},
    };
    detail::write_text_file(path, doc.dump(2) + "\n");
}

inline EstimationReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_report: cannot open " + path.string());
    }
    const nlohmann::json doc = nlohmann::json::parse(in);

    const auto& rows = doc.at("distribution");
    if (rows.size() < 2) {
        throw std::runtime_error("read_report: " + path.string() +
                                 ": distribution needs at least two entries");
    }
    std::vector<double> levels;
    std::vector<double> mass;
    levels.reserve(rows.size());
    mass.reserve(rows.size());
    const Index start = rows.front().at("index").get<Index>();
    Index expected = start;
    for (const auto& row : rows) {
        if (row.at("index").get<Index>() != expected) {
            throw std::runtime_error("read_report: " + path.string() +
                                     ": distribution indices are not contiguous");
        }
        ++expected;
        levels.push_back(row.at("trend").get<double>());
        mass.push_back(row.at("mass").get<double>());
    }
    const IndexWindow window(start, expected - 1);

    const auto& interval = doc.at("interval");
    return EstimationReport{
        doc.at("tau_hat").get<Index>(),
        doc.at("rate_hat").get<double>(),
        TrendSequence(window, std::move(levels)),
        LocationDistribution(window, std::move(mass)),
        ConfidenceInterval(interval.at("left").get<Index>(), interval.at("right").get<Index>(),
                           interval.at("level").get<double>()),
        doc.at("bandwidth").get<int>(),
    };
}

inline void write_coverage_table(const CoverageTable& table, TableFormat format,
                                 const std::filesystem::path& path) {
    std::vector<CoverageRow> rows = table.rows;
    std::sort(rows.begin(), rows.end(),
              [](const CoverageRow& a, const CoverageRow& b) { return a.bandwidth < b.bandwidth; });
    if (format == TableFormat::csv) {
        std::string out = "bandwidth,coverage_rate,mean_interval_length\n";
        for (const CoverageRow& row : rows) {
            out += std::to_string(row.bandwidth);
            out += ',';
            out += detail::format_double(row.coverage_rate);
            out += ',';
            out += detail::format_double(row.mean_interval_length);
            out += '\n';
        }
        detail::write_text_file(path, out);
        return;
    }
    nlohmann::json doc = nlohmann::json::array();
    for (const CoverageRow& row : rows) {
        doc.push_back({{"bandwidth", row.bandwidth},
                       {"coverage_rate", row.coverage_rate},
                       {"mean_interval_length", row.mean_interval_length}});
    }
    detail::write_text_file(path, doc.dump(2) + "\n");
}

// Endpoints of the interval for one series across a bandwidth sweep.
struct IntervalSweepRow {
    int bandwidth;
    Index left;
    Index right;
};

inline void write_interval_sweep(const std::vector<IntervalSweepRow>& sweep, TableFormat format,
                                 const std::filesystem::path& path) {
    std::vector<IntervalSweepRow> rows = sweep;
    std::sort(rows.begin(), rows.end(), [](const IntervalSweepRow& a, const IntervalSweepRow& b) {
        return a.bandwidth < b.bandwidth;
    });
    if (format == TableFormat::csv) {
        std::string out = "bandwidth,left,right\n";
        for (const IntervalSweepRow& row : rows) {
            out += std::to_string(row.bandwidth);
            out += ',';
            out += std::to_string(row.left);
            out += ',';
            out += std::to_string(row.right);
            out += '\n';
        }
        detail::write_text_file(path, out);
        return;
    }
    nlohmann::json doc = nlohmann::json::array();
    for (const IntervalSweepRow& row : rows) {
        doc.push_back({{"bandwidth", row.bandwidth}, {"left", row.left}, {"right", row.right}});
    }
    detail::write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace turnpoint
