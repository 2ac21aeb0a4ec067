#include "krig/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "krig/errors.hpp"

namespace krig {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_close(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw MalformedCsv("line " + std::to_string(line_no) + ": non-numeric close value '" +
                           field + "'");
    return v;
}

// Rough day ordinal; only ordering and coarse spacing matter here.
long date_ordinal(const std::string& date, std::size_t line_no) {
    int y = 0, m = 0, d = 0;
    if (std::sscanf(date.c_str(), "%d-%d-%d", &y, &m, &d) != 3 || m < 1 || m > 12 || d < 1 ||
        d > 31)
        throw MalformedCsv("line " + std::to_string(line_no) + ": bad ISO-8601 date '" + date +
                           "'");
    return long(y) * 372 + long(m - 1) * 31 + long(d - 1);
}

}  // namespace

TimeSeries load_series(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    std::size_t line_no = 0;
    bool with_dates = false;
    bool header_seen = false;
    TimeSeries series;
    std::vector<long> ordinals;

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line == "date,close") {
                with_dates = true;
            } else if (line == "close") {
                with_dates = false;
            } else {
                throw MalformedCsv("line " + std::to_string(line_no) +
                                   ": expected header 'date,close' or 'close', got '" + line +
                                   "'");
            }
            header_seen = true;
            continue;
        }
        if (with_dates) {
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw MalformedCsv("line " + std::to_string(line_no) + ": expected two columns");
            const std::string date = line.substr(0, comma);
            const long ord = date_ordinal(date, line_no);
            if (!ordinals.empty() && ord <= ordinals.back())
                throw MalformedCsv("line " + std::to_string(line_no) +
                                   ": dates must be strictly increasing");
            ordinals.push_back(ord);
            series.labels.push_back(date);
            series.values.push_back(parse_close(line.substr(comma + 1), line_no));
        } else {
            series.values.push_back(parse_close(line, line_no));
        }
    }
    if (!header_seen) throw EmptyInput("input contains no header row");
    if (series.values.empty()) throw EmptyInput("input contains no data rows");

    if (warnings && ordinals.size() >= 2) {
        long min_gap = ordinals[1] - ordinals[0];
        for (std::size_t i = 2; i < ordinals.size(); ++i)
            min_gap = std::min(min_gap, ordinals[i] - ordinals[i - 1]);
        if (min_gap < 28)
            warnings->push_back("input dates suggest finer-than-monthly spacing (minimum gap " +
                                std::to_string(min_gap) + " days)");
    }
    return series;
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    if (series.has_labels()) {
        out << "date,close\n";
        for (std::size_t i = 0; i < series.values.size(); ++i)
            out << series.labels[i] << ',' << format_double(series.values[i]) << '\n';
    } else {
        out << "close\n";
        for (double v : series.values) out << format_double(v) << '\n';
    }
}

std::string format_report_row(const ReportRow& row) {
    return row.index_name + ',' + std::to_string(row.n) + ',' + std::to_string(row.j_star) + ',' +
           format_double(row.estimate) + ',' + format_double(row.min_sq_error) + ',' +
           format_double(row.residual);
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kReportHeader << '\n';
    for (const ReportRow& row : rows) out << format_report_row(row) << '\n';
}

void write_plot_csv(std::ostream& out, const TimeSeries& series, double classic_mean,
                    const std::vector<ScanPoint>& scan) {
    out << kPlotHeader << '\n';
    long max_i = long(series.size());
    if (!scan.empty()) max_i = std::max(max_i, scan.back().j);
    std::size_t next = 0;
    const std::string classic = format_double(classic_mean);
    for (long i = 1; i <= max_i; ++i) {
        out << i << ',';
        if (i <= long(series.size())) out << format_double(series.values[std::size_t(i - 1)]);
        out << ',' << classic << ',';
        if (next < scan.size() && scan[next].j == i) {
            out << format_double(scan[next].estimate);
            ++next;
        }
        out << '\n';
    }
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_outputs(const std::vector<ReportRow>& rows, const std::vector<ScanPoint>& scan,
                   const TimeSeries& series, double classic_mean, const OutputPaths& paths) {
    if (rows.empty()) throw std::invalid_argument("no report rows to write");
    {
        auto out = open_out(paths.report_csv);
        write_report_csv(out, rows);
    }
    if (!paths.scan_csv.empty()) {
        auto out = open_out(paths.scan_csv);
        write_scan_csv(out, scan);
    }
    if (!paths.plot_csv.empty()) {
        auto out = open_out(paths.plot_csv);
        write_plot_csv(out, series, classic_mean, scan);
    }
}

}  // namespace krig
