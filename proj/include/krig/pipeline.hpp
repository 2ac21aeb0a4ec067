#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krig/data_io.hpp"
#include "krig/scan.hpp"

namespace krig {

struct ReportConfig {
    std::string index_name;
    int n = 0;                  // window: the FIRST n observations
    CorrelationFamily family = CorrelationFamily::Exponential;
    long j_max = 0;             // 0 -> default 10n
    double tolerance = 1e-3;    // on |w.rho + mu|
    std::size_t max_lag = 0;    // ACF lags for the fit; 0 -> default
    bool absolute_units = false;  // scale min_sq_error by the estimated sigma^2
};

struct ReportOutput {
    CorrelationModel model;
    SeriesStats stats;
    double classic_estimate = 0.0;
    std::vector<ScanPoint> scan;
    std::optional<RootResult> root;  // empty when no root was found in range
    std::optional<ReportRow> row;
};

/// Full pipeline on one series: fit the correlation model on the first n
/// observations, assemble and factor the kriging system, scan j = n+1..j_max
/// for the constraint root, and shape the result as a report row. A missing
/// root leaves `root`/`row` empty but keeps the scan for inspection.
ReportOutput run_report(const TimeSeries& series, const ReportConfig& config);

std::size_t default_max_lag(int n);

}  // namespace krig
