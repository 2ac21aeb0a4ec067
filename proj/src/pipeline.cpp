#include "krig/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "krig/errors.hpp"

namespace krig {

std::size_t default_max_lag(int n) {
    // Quarter of the window, clamped to something fittable on both ends.
    const long lag = std::clamp(long(n) / 4, 2L, 60L);
    return std::size_t(std::min(lag, long(n) - 1));
}

ReportOutput run_report(const TimeSeries& series, const ReportConfig& config) {
    const int n = config.n;
    if (n < 4) throw std::invalid_argument("window size n must be at least 4");
    if (series.size() < std::size_t(n))
        throw std::invalid_argument("series shorter than the requested window");

    const std::span<const double> window(series.values.data(), std::size_t(n));
    const std::size_t max_lag = config.max_lag > 0 ? config.max_lag : default_max_lag(n);
    const EmpiricalAcf acf = sample_acf(window, max_lag);
    const CorrelationModel model = fit_model(acf, config.family);

    const KrigingSystem system(model, n);
    const SeriesStats stats = window_stats(system, window);

    ReportOutput out{model, stats, 0.0, {}, std::nullopt, std::nullopt};
    out.classic_estimate = stats.classic_mean;

    const long j_max = config.j_max > 0 ? config.j_max : 10L * n;
    if (j_max <= n) throw std::invalid_argument("j_max must exceed n");
    const double sigma2 = config.absolute_units ? stats.sigma2 : 1.0;
    out.scan = scan_residuals(system, model, window, n + 1, j_max, sigma2);

    try {
        out.root = find_root_j(out.scan, config.tolerance);
    } catch (const NoRootInRange&) {
        return out;
    }

    ReportRow row;
    row.index_name = config.index_name;
    row.n = n;
    row.j_star = out.root->j_star;
    row.estimate = out.root->point.estimate;
    row.min_sq_error = out.root->point.min_sq_error;
    row.residual = out.root->point.residual;
    out.row = row;
    return out;
}

}  // namespace krig
