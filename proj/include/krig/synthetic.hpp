#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "krig/data_io.hpp"

namespace krig {

/// Stationary AR(1) with marginal N(mean, sigma^2); its ACF is exactly the
/// exponential family, rho(h) = phi^h.
struct Ar1Spec {
    double phi = 0.0;      // |phi| < 1
    double mean = 0.0;     // true m
    double sigma = 1.0;    // marginal standard deviation
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

TimeSeries generate_ar1(const Ar1Spec& spec);

struct ConvergenceRow {
    int n = 0;
    double mse_mean_estimator = 0.0;  // E[(w.v - m)^2] across replicates
    double se = 0.0;                  // MC standard error of the MSE
    double var_prediction_error = 0.0;  // Var(V_j - w.V) at the root j
    double se2 = 0.0;                 // MC standard error of that variance
};

/// Monte Carlo check of the large-n limits: the estimator's mean-square
/// error around the true mean, and the prediction-error variance at the
/// constraint root. Per-replicate seeds derive deterministically from
/// spec.seed; spec.length is ignored (each replicate runs to the root index).
std::vector<ConvergenceRow> mc_asymptotics(const Ar1Spec& spec, std::span<const int> n_grid,
                                           int replicates);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// Exponential correlation model matching the AR(1) ACF phi^h.
CorrelationModel ar1_model(double phi);

}  // namespace krig
