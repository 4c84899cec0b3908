#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "turnpoint/turnpoint.hpp"

namespace {

using namespace turnpoint;

std::string format_extension(TableFormat format) {
    return format == TableFormat::csv ? "csv" : "json";
}

std::vector<int> sorted_unique(std::vector<int> hs) {
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

struct AnalyzeArgs {
    std::string input;
    std::vector<int> bandwidths;
    double level = 0.95;
    SeriesLayout layout = SeriesLayout::detect;
    TableFormat format = TableFormat::json;
    std::string out_dir = ".";
};

void run_analyze(const AnalyzeArgs& args) {
    const TimeSeries series = load_series(args.input, args.layout);
    const std::vector<int> bandwidths = sorted_unique(args.bandwidths);

    // Estimate everything before writing anything, so a failure at any
    // bandwidth leaves no output behind.
    std::vector<EstimationReport> reports;
    reports.reserve(bandwidths.size());
    for (int h : bandwidths) {
        reports.push_back(estimate_minimum_location(series, Bandwidth(h), args.level));
    }

    const std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    std::vector<IntervalSweepRow> sweep;
    for (const EstimationReport& report : reports) {
        const std::filesystem::path path =
            dir / ("report_h" + std::to_string(report.bandwidth) + "." + format_extension(args.format));
        write_report(report, args.format, path);
        sweep.push_back({report.bandwidth, report.interval.left(), report.interval.right()});
        std::cout << "h=" << report.bandwidth << " tau_hat=" << report.tau_hat
                  << " rate_hat=" << report.rate_hat << " interval=[" << report.interval.left()
                  << "," << report.interval.right() << "] level=" << report.interval.level()
                  << "\n";
    }
    if (sweep.size() > 1) {
        write_interval_sweep(sweep, args.format,
                             dir / ("intervals." + format_extension(args.format)));
    }
}

struct SimulateArgs {
    std::string trend;
    double left = 0.0;
    double right = 0.0;
    Index t0 = 500;
    Index n = 1000;
    double left_amplitude = 2.0;
    double right_amplitude = 4.0;
    double rate = 1.0;
    int realizations = 200;
    std::vector<int> bandwidths;
    double level = 0.95;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    TableFormat format = TableFormat::csv;
};

TrendSpec make_trend_spec(const std::string& name, double left, double right, Index t0,
                          IndexWindow window, double left_amplitude, double right_amplitude) {
    if (name == "linear") {
        return PiecewiseLinearTrendSpec(left, right, t0, window);
    }
    return ExponentialTrendSpec(left, right, t0, window, left_amplitude, right_amplitude);
}

void run_simulate(const SimulateArgs& args) {
    StudyConfig config{
        make_trend_spec(args.trend, args.left, args.right, args.t0, IndexWindow(1, args.n),
                        args.left_amplitude, args.right_amplitude),
        args.rate,
        args.realizations,
        sorted_unique(args.bandwidths),
        args.level,
        args.seed,
    };
    const CoverageTable table = coverage_study(config, args.threads);
    write_coverage_table(table, args.format, args.out);
    for (const CoverageRow& row : table.rows) {
        std::cout << "h=" << row.bandwidth << " coverage=" << row.coverage_rate
                  << " mean_length=" << row.mean_interval_length << "\n";
    }
}

struct DistArgs {
    std::string trend_file;
    SeriesLayout layout = SeriesLayout::detect;
    std::string trend;
    double left = 0.0;
    double right = 0.0;
    Index t0 = 0;
    std::optional<Index> n;
    std::optional<Index> start;
    std::optional<Index> end;
    double left_amplitude = 2.0;
    double right_amplitude = 4.0;
    double rate = 1.0;
    double level = 0.95;
    std::string out;
    TableFormat format = TableFormat::csv;
};

IndexWindow dist_window(const DistArgs& args) {
    if (args.n) {
        return IndexWindow(1, *args.n);
    }
    if (args.start && args.end) {
        return IndexWindow(*args.start, *args.end);
    }
    throw std::invalid_argument("dist: give either --n or both --start and --end");
}

TrendSequence dist_trend(const DistArgs& args) {
    if (!args.trend_file.empty()) {
        const TimeSeries levels = load_series(args.trend_file, args.layout);
        return TrendSequence(levels.window(),
                             {levels.values().begin(), levels.values().end()});
    }
    const IndexWindow window = dist_window(args);
    if (args.trend == "linear-symmetric") {
        return linear_symmetric_trend(args.left, window);
    }
    if (args.trend == "linear") {
        return linear_asymmetric_trend(PiecewiseLinearTrendSpec(args.left, args.right, args.t0, window));
    }
    if (args.trend == "exponential") {
        return exponential_trend(ExponentialTrendSpec(args.left, args.right, args.t0, window,
                                                      args.left_amplitude, args.right_amplitude));
    }
    throw std::invalid_argument("dist: give either --trend-file or --trend");
}

void run_dist(const DistArgs& args) {
    const TrendSequence trend = dist_trend(args);
    const LocationDistribution dist = location_distribution(trend, NoiseModel(args.rate));
    const ConfidenceInterval interval = confidence_interval(dist, args.level);
    const double alpha = 1.0 - args.level;

    std::ostream& summary_out = args.out.empty() ? std::cerr : std::cout;
    summary_out << "expectation=" << expectation(dist) << "\n";
    summary_out << "quantile[" << alpha / 2.0 << "]=" << interval.left() << "\n";
    summary_out << "quantile[" << 1.0 - alpha / 2.0 << "]=" << interval.right() << "\n";

    if (args.out.empty()) {
        std::cout << detail::distribution_csv(trend, dist);
    } else {
        write_distribution(trend, dist, args.format, args.out);
    }
}

}  // namespace

int main(int argc, char** argv) try {
    CLI::App app{
        "Turning-point location analysis for series modeled as a deterministic trend plus "
        "exponential noise. Indices are beat numbers (or sample numbers); values are in the "
        "input units (e.g. milliseconds); rates are in inverse input units."};
    app.require_subcommand(1);
    // Keep -h free for the bandwidth option; help is --help only.
    app.set_help_flag("--help", "print help and exit");

    const std::map<std::string, TableFormat> format_names{{"csv", TableFormat::csv},
                                                          {"json", TableFormat::json}};
    const std::map<std::string, SeriesLayout> layout_names{{"auto", SeriesLayout::detect},
                                                           {"single", SeriesLayout::single_column},
                                                           {"two", SeriesLayout::two_column}};

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Estimate the minimum location of a series file and write per-bandwidth reports");
    analyze->set_help_flag("--help", "print help and exit");
    analyze->add_option("--input,-i", analyze_args.input, "series file (values, or index,value rows)")
        ->required();
    analyze->add_option("--h", analyze_args.bandwidths,
                        "bandwidths in index units, comma separated (e.g. 5,8,11,14,17,20)")
        ->required()
        ->delimiter(',');
    analyze->add_option("--level", analyze_args.level, "confidence level")
        ->default_val(0.95)
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    analyze->add_option("--layout", analyze_args.layout, "input layout")
        ->transform(CLI::CheckedTransformer(layout_names))
        ->default_str("auto");
    analyze->add_option("--format", analyze_args.format, "report file format")
        ->transform(CLI::CheckedTransformer(format_names))
        ->default_str("json");
    analyze->add_option("--out-dir", analyze_args.out_dir,
                        "directory for report_h<h>.* files and the intervals sweep table")
        ->default_val(".");
    analyze->callback([&] { run_analyze(analyze_args); });

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo coverage study of the interval on a parametric trend");
    simulate->set_help_flag("--help", "print help and exit");
    simulate->add_option("--trend", simulate_args.trend, "trend family")
        ->required()
        ->check(CLI::IsMember({"linear", "exponential"}));
    simulate->add_option("--a", simulate_args.left,
                         "left slope (linear) or left rate (exponential), per index")
        ->required();
    simulate->add_option("--b", simulate_args.right,
                         "right slope (linear) or right rate (exponential), per index")
        ->required();
    simulate->add_option("--t0", simulate_args.t0, "true minimum location (index)")->default_val(500);
    simulate->add_option("--n", simulate_args.n, "series length; the window is 1..n")
        ->default_val(1000);
    simulate->add_option("--left-amp", simulate_args.left_amplitude,
                         "decay amplitude (exponential trend only)")
        ->default_val(2.0);
    simulate->add_option("--right-amp", simulate_args.right_amplitude,
                         "recovery asymptote (exponential trend only)")
        ->default_val(4.0);
    simulate->add_option("--lambda", simulate_args.rate, "noise rate (inverse value units)")
        ->default_val(1.0);
    simulate->add_option("--reps", simulate_args.realizations, "number of realizations")
        ->default_val(200);
    simulate->add_option("--h", simulate_args.bandwidths, "bandwidths, comma separated")
        ->required()
        ->delimiter(',');
    simulate->add_option("--level", simulate_args.level, "confidence level")
        ->default_val(0.95)
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    simulate->add_option("--seed", simulate_args.seed, "random seed")->default_val(1);
    simulate->add_option("--threads", simulate_args.threads,
                         "worker threads (the table does not depend on this)")
        ->default_val(1);
    simulate->add_option("--out", simulate_args.out, "coverage table destination")->required();
    simulate->add_option("--format", simulate_args.format, "table format")
        ->transform(CLI::CheckedTransformer(format_names))
        ->default_str("csv");
    simulate->callback([&] { run_simulate(simulate_args); });

    DistArgs dist_args;
    CLI::App* dist = app.add_subcommand(
        "dist", "Exact argmin distribution for a known trend and noise rate");
    dist->set_help_flag("--help", "print help and exit");
    CLI::Option* trend_file_opt =
        dist->add_option("--trend-file", dist_args.trend_file, "trend levels as a series file");
    dist->add_option("--layout", dist_args.layout, "trend file layout")
        ->transform(CLI::CheckedTransformer(layout_names))
        ->default_str("auto");
    dist->add_option("--trend", dist_args.trend, "parametric trend family")
        ->check(CLI::IsMember({"linear", "linear-symmetric", "exponential"}))
        ->excludes(trend_file_opt);
    dist->add_option("--a", dist_args.left, "left slope/rate per index (the only slope when symmetric)");
    dist->add_option("--b", dist_args.right, "right slope/rate per index");
    dist->add_option("--t0", dist_args.t0, "minimum location (index)");
    dist->add_option("--n", dist_args.n, "window 1..n");
    dist->add_option("--start", dist_args.start, "window start index");
    dist->add_option("--end", dist_args.end, "window end index");
    dist->add_option("--left-amp", dist_args.left_amplitude, "decay amplitude (exponential only)")
        ->default_val(2.0);
    dist->add_option("--right-amp", dist_args.right_amplitude,
                     "recovery asymptote (exponential only)")
        ->default_val(4.0);
    dist->add_option("--lambda", dist_args.rate, "noise rate (inverse value units)")->required();
    dist->add_option("--level", dist_args.level, "level for the quantile summary")
        ->default_val(0.95)
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    dist->add_option("--out", dist_args.out,
                     "distribution table destination (stdout CSV when omitted)");
    dist->add_option("--format", dist_args.format, "table format")
        ->transform(CLI::CheckedTransformer(format_names))
        ->default_str("csv");
    dist->callback([&] { run_dist(dist_args); });

    struct {
        double left = 0.0;
        double right = 0.0;
        double rate = 1.0;
    } bias_args;
    CLI::App* bias = app.add_subcommand(
        "bias", "Expected argmin shift for an asymmetric V-shaped trend (index units)");
    bias->set_help_flag("--help", "print help and exit");
    bias->add_option("--a", bias_args.left, "left slope per index")->required();
    bias->add_option("--b", bias_args.right, "right slope per index")->required();
    bias->add_option("--lambda", bias_args.rate, "noise rate (inverse value units)")->default_val(1.0);
    bias->callback([&] {
        std::cout << asymmetric_bias(bias_args.left, bias_args.right, bias_args.rate) << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
}
