#include "krig/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "krig/data_io.hpp"
#include "krig/errors.hpp"

namespace krig {

double asymptotic_xi(const KrigingSystem& system) {
    return 1.0 / (2.0 * system.ones_quadratic());
}

std::vector<ScanPoint> scan_residuals(const KrigingSystem& system, const CorrelationModel& model,
                                      std::span<const double> window, long j_from, long j_to,
                                      double sigma2) {
    const int n = system.size();
    if (int(window.size()) != n)
        throw std::invalid_argument("window length does not match system size");
    if (j_from < n + 1 || j_to < j_from)
        throw std::invalid_argument("scan range must satisfy n+1 <= j_from <= j_to");

    std::vector<ScanPoint> points;
    points.reserve(std::size_t(j_to - j_from + 1));
    for (long j = j_from; j <= j_to; ++j) {
        const Eigen::VectorXd rhs = assemble_rhs(model, n, j);
        const KrigingSolution sol = system.solve(rhs, j);
        ScanPoint p;
        p.j = j;
        p.residual = constraint_residual(sol, rhs);
        p.estimate = estimate_mean(sol.weights, window);
        p.multiplier = sol.multiplier;
        p.xi_hat = rhs.mean();
        p.min_sq_error = sigma2 * (sol.weights.dot(rhs) - sol.multiplier);
        points.push_back(p);
    }
    return points;
}

RootResult find_root_j(const std::vector<ScanPoint>& scan, double tolerance) {
    if (scan.empty()) throw std::invalid_argument("scan is empty");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    // Prefer endpoints of sign-change brackets; fall back to the global argmin.
    std::size_t best = scan.size();
    bool bracketed = false;
    auto consider = [&](std::size_t i) {
        if (best == scan.size() || std::abs(scan[i].residual) < std::abs(scan[best].residual))
            best = i;
    };
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
        const double a = scan[i].residual, b = scan[i + 1].residual;
        if ((a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0)) {
            consider(i);
            consider(i + 1);
            bracketed = true;
        }
    }
    if (!bracketed) {
        for (std::size_t i = 0; i < scan.size(); ++i) consider(i);
        if (std::abs(scan[best].residual) > tolerance)
            throw NoRootInRange("constraint residual never vanishes in the scanned range "
                                "(j_to too small or the model has no vanishing tail)");
    }
    return {scan[best].j, scan[best], bracketed};
}

void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& scan) {
    out << "j,residual,estimate,mu,xi_hat,min_sq_error\n";
    for (const ScanPoint& p : scan) {
        out << p.j << ',' << format_double(p.residual) << ',' << format_double(p.estimate) << ','
            << format_double(p.multiplier) << ',' << format_double(p.xi_hat) << ','
            << format_double(p.min_sq_error) << '\n';
    }
}

}  // namespace krig
