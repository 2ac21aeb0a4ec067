#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "krig/kriging.hpp"

namespace krig {

struct ScanPoint {
    long j = 0;
    double residual = 0.0;      // w.rho + mu
    double estimate = 0.0;      // w.v
    double multiplier = 0.0;    // mu_j
    double xi_hat = 0.0;        // mean of the rhs entries
    double min_sq_error = 0.0;  // sigma^2 (w.rho - mu)
};

struct RootResult {
    long j_star = 0;
    ScanPoint point;
    bool bracketed = false;  // residual changed sign at a scanned neighbor
};

/// xi* = 1 / (2 F'Lambda^{-1}F), the constant-rhs value at which the
/// constraint residual vanishes.
double asymptotic_xi(const KrigingSystem& system);

/// One ScanPoint per j in [j_from, j_to], all solved against the cached
/// factorization. sigma2 scales min_sq_error (1 for normalized units).
std::vector<ScanPoint> scan_residuals(const KrigingSystem& system, const CorrelationModel& model,
                                      std::span<const double> window, long j_from, long j_to,
                                      double sigma2 = 1.0);

/// Picks the scanned j with the smallest |residual|, preferring the ends of a
/// sign-change bracket; ties go to the smaller j. Throws NoRootInRange when
/// the best |residual| exceeds the tolerance and no sign change exists.
RootResult find_root_j(const std::vector<ScanPoint>& scan, double tolerance);

void write_scan_csv(std::ostream& out, const std::vector<ScanPoint>& scan);

}  // namespace krig
