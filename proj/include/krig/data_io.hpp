#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "krig/scan.hpp"

namespace krig {

/// Ordered observations (monthly close quotes), with optional ISO-8601 date
/// labels. Labels, when present, are strictly increasing and aligned with
/// the values.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty when the input had no date column

    bool has_labels() const { return !labels.empty(); }
    std::size_t size() const { return values.size(); }
};

struct ReportRow {
    std::string index_name;
    int n = 0;
    long j_star = 0;
    double estimate = 0.0;
    double min_sq_error = 0.0;
    double residual = 0.0;
};

inline constexpr const char* kReportHeader = "index,n,j,estimate,min_sq_error,residual";
inline constexpr const char* kPlotHeader = "i,value,classic_mean,numerical_estimate";

/// Shortest decimal rendering that round-trips the exact double.
std::string format_double(double x);

/// Parses a `date,close` or `close` CSV. Blank lines are skipped; malformed
/// rows raise MalformedCsv with the offending line number. A warning string
/// is appended when date labels suggest finer-than-monthly spacing.
TimeSeries load_series(std::istream& in, std::vector<std::string>* warnings = nullptr);

void write_series_csv(std::ostream& out, const TimeSeries& series);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// Plot data for the figure layout: the series itself, the constant classic
/// line, and one numerical-estimate dot per scanned j.
void write_plot_csv(std::ostream& out, const TimeSeries& series, double classic_mean,
                    const std::vector<ScanPoint>& scan);

struct OutputPaths {
    std::string report_csv;
    std::string scan_csv;
    std::string plot_csv;
};

void write_outputs(const std::vector<ReportRow>& rows, const std::vector<ScanPoint>& scan,
                   const TimeSeries& series, double classic_mean, const OutputPaths& paths);

std::string format_report_row(const ReportRow& row);

}  // namespace krig
