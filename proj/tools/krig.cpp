#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "krig/errors.hpp"
#include "krig/pipeline.hpp"
#include "krig/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

krig::TimeSeries load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::vector<std::string> warnings;
    krig::TimeSeries series = krig::load_series(in, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return series;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

int window_or_all(const krig::TimeSeries& series, int n) {
    if (n == 0) return int(series.size());
    if (n < 0 || std::size_t(n) > series.size())
        throw std::runtime_error("window size n exceeds the series length");
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ordinary-kriging mean estimation for stationary time series"};
    app.require_subcommand(1);

    std::string input, output, output_dir = ".", name, family_name = "exponential";
    std::string units = "normalized";
    int n = 0;
    long j_max = 0;
    std::size_t max_lag = 0;
    double tolerance = 1e-3;

    // simulate
    double phi = 0.0, mean = 0.0, sigma = 1.0;
    std::size_t length = 240;
    std::uint64_t seed = 0;
    std::vector<int> n_grid;
    int replicates = 500;
    bool mc = false;

    auto* sim = app.add_subcommand("simulate", "Generate an AR(1) series or a Monte Carlo table");
    sim->add_option("--phi", phi, "AR(1) coefficient in (-1,1)")->required();
    sim->add_option("--mean", mean, "true mean");
    sim->add_option("--sigma", sigma, "marginal standard deviation");
    sim->add_option("--length", length, "series length");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--output", output, "output CSV path")->required();
    sim->add_flag("--mc", mc, "write the asymptotics convergence table instead of a series");
    sim->add_option("--n-grid", n_grid, "window sizes for --mc");
    sim->add_option("--replicates", replicates, "Monte Carlo replicates for --mc");

    auto* acf_cmd = app.add_subcommand("acf", "Sample autocorrelation of an input series");
    acf_cmd->add_option("--input", input, "input CSV")->required();
    acf_cmd->add_option("--n", n, "use only the first n observations");
    acf_cmd->add_option("--max-lag", max_lag, "largest lag");
    acf_cmd->add_option("--output", output, "output CSV path")->required();

    auto* fit_cmd = app.add_subcommand("fit", "Fit a correlation model to the sample ACF");
    fit_cmd->add_option("--input", input, "input CSV")->required();
    fit_cmd->add_option("--n", n, "use only the first n observations");
    fit_cmd->add_option("--max-lag", max_lag, "largest lag used in the fit");
    fit_cmd->add_option("--family", family_name, "exponential|gaussian|spherical|damped-cosine");

    auto* scan_cmd = app.add_subcommand("scan", "Scan extrapolation indices for the constraint root");
    scan_cmd->add_option("--input", input, "input CSV")->required();
    scan_cmd->add_option("--n", n, "window size (first n observations)")->required();
    scan_cmd->add_option("--family", family_name, "correlation family");
    scan_cmd->add_option("--j-max", j_max, "last scanned index (default 10n)");
    scan_cmd->add_option("--max-lag", max_lag, "ACF lags for the model fit");
    scan_cmd->add_option("--units", units, "normalized|absolute");
    scan_cmd->add_option("--output", output, "scan CSV path")->required();

    auto* report_cmd = app.add_subcommand("report", "Full pipeline: acf, fit, scan, report");
    report_cmd->add_option("--input", input, "input CSV")->required();
    report_cmd->add_option("--name", name, "index name for the report row (default: file stem)");
    report_cmd->add_option("--n", n, "window size (first n observations)")->required();
    report_cmd->add_option("--family", family_name, "correlation family");
    report_cmd->add_option("--j-max", j_max, "last scanned index (default 10n)");
    report_cmd->add_option("--tolerance", tolerance, "residual tolerance for the root");
    report_cmd->add_option("--max-lag", max_lag, "ACF lags for the model fit");
    report_cmd->add_option("--units", units, "normalized|absolute");
    report_cmd->add_option("--output-dir", output_dir, "directory for report/scan/plot CSVs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (units != "normalized" && units != "absolute")
            throw std::runtime_error("--units must be 'normalized' or 'absolute'");

        if (sim->parsed()) {
            if (mc) {
                if (n_grid.empty()) n_grid = {25, 50, 100, 200};
                krig::Ar1Spec spec{phi, mean, sigma, std::max<std::size_t>(length, 2), seed};
                const auto rows = krig::mc_asymptotics(spec, n_grid, replicates);
                auto out = open_out(output);
                krig::write_convergence_csv(out, rows);
            } else {
                const krig::TimeSeries series =
                    krig::generate_ar1({phi, mean, sigma, length, seed});
                auto out = open_out(output);
                krig::write_series_csv(out, series);
            }
            return 0;
        }

        if (acf_cmd->parsed()) {
            const krig::TimeSeries series = load_file(input);
            const int win = window_or_all(series, n);
            const std::size_t lags = max_lag > 0 ? max_lag : krig::default_max_lag(win);
            const auto acf = krig::sample_acf(
                std::span<const double>(series.values.data(), std::size_t(win)), lags);
            auto out = open_out(output);
            krig::write_acf_csv(out, acf);
            return 0;
        }

        if (fit_cmd->parsed()) {
            const krig::TimeSeries series = load_file(input);
            const int win = window_or_all(series, n);
            const std::size_t lags = max_lag > 0 ? max_lag : krig::default_max_lag(win);
            const auto acf = krig::sample_acf(
                std::span<const double>(series.values.data(), std::size_t(win)), lags);
            const auto family = krig::family_from_name(family_name);
            const auto model = krig::fit_model(acf, family);
            std::cout << "family=" << krig::family_name(model.family())
                      << " range=" << krig::format_double(model.range())
                      << " nugget=" << krig::format_double(model.nugget());
            if (family == krig::CorrelationFamily::DampedCosine)
                std::cout << " damping=" << krig::format_double(model.damping());
            std::cout << '\n';
            return 0;
        }

        const krig::TimeSeries series = load_file(input);
        krig::ReportConfig config;
        config.index_name = name.empty() ? fs::path(input).stem().string() : name;
        config.n = n;
        config.family = krig::family_from_name(family_name);
        config.j_max = j_max;
        config.tolerance = tolerance;
        config.max_lag = max_lag;
        config.absolute_units = units == "absolute";
        const krig::ReportOutput result = krig::run_report(series, config);

        if (scan_cmd->parsed()) {
            auto out = open_out(output);
            krig::write_scan_csv(out, result.scan);
            return 0;
        }

        // report
        fs::create_directories(output_dir);
        const auto dir = fs::path(output_dir);
        {
            auto out = open_out((dir / "scan.csv").string());
            krig::write_scan_csv(out, result.scan);
        }
        {
            auto out = open_out((dir / "plot.csv").string());
            krig::write_plot_csv(out, series, result.classic_estimate, result.scan);
        }
        if (!result.row) {
            std::cerr << "error: no constraint root in the scanned range (try a larger --j-max)\n";
            return 2;
        }
        {
            auto out = open_out((dir / "report.csv").string());
            krig::write_report_csv(out, {*result.row});
        }
        std::cout << krig::kReportHeader << '\n'
                  << krig::format_report_row(*result.row) << '\n';
        return 0;
    } catch (const krig::NoRootInRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
