#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <span>

#include "krig/correlation.hpp"

namespace krig {

/// Ordinary-kriging weights and Lagrange multiplier for one target index j.
/// The weights sum to one (unbiasedness row of the augmented system).
struct KrigingSolution {
    long j = 0;
    Eigen::VectorXd weights;
    double multiplier = 0.0;
};

struct SeriesStats {
    double sigma2 = 1.0;
    double classic_mean = 0.0;
};

/// The n x n correlation matrix Lambda with its Cholesky factorization,
/// assembled once per (model, n) and reused for every right-hand side.
/// Immutable after construction; concurrent solves are safe.
class KrigingSystem {
public:
    KrigingSystem(const CorrelationModel& model, int n);

    int size() const { return int(lambda_.rows()); }
    const Eigen::MatrixXd& lambda() const { return lambda_; }

    /// Solves Lambda*w + mu*F = rhs subject to F'w = 1 via the bordering
    /// scheme on the cached factorization, with one step of iterative
    /// refinement on the augmented residual.
    KrigingSolution solve(const Eigen::VectorXd& rhs, long j) const;

    /// Lambda^{-1}F / (F'Lambda^{-1}F); the j-independent constant-rhs limit.
    Eigen::VectorXd classic_weights() const;

    /// F'Lambda^{-1}F
    double ones_quadratic() const { return ones_quad_; }

private:
    Eigen::MatrixXd lambda_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd lambda_inv_ones_;
    double ones_quad_ = 0.0;
};

inline KrigingSystem assemble_lambda(const CorrelationModel& model, int n) {
    return KrigingSystem(model, n);
}

/// rhs[i] = rho(|i - j|) for i = 1..n (one-based sample indices).
Eigen::VectorXd assemble_rhs(const CorrelationModel& model, int n, long j);

inline KrigingSolution solve_kriging(const KrigingSystem& system, const Eigen::VectorXd& rhs,
                                     long j) {
    return system.solve(rhs, j);
}

inline Eigen::VectorXd classic_ls_weights(const KrigingSystem& system) {
    return system.classic_weights();
}

double estimate_mean(std::span<const double> weights, std::span<const double> values);
double estimate_mean(const Eigen::VectorXd& weights, std::span<const double> values);

/// w.rhs + mu; the scan looks for the j where this crosses zero.
double constraint_residual(const KrigingSolution& solution, const Eigen::VectorXd& rhs);

/// sigma^2 (w.rhs - mu); equals sigma^2 w'Lambda w by the system identity.
double weighted_variance(const KrigingSolution& solution, const Eigen::VectorXd& rhs,
                         const SeriesStats& stats);

/// sigma^2 (1 - (w.rhs + mu)); the prediction-error variance at index j.
double kriging_variance(const KrigingSolution& solution, const Eigen::VectorXd& rhs,
                        const SeriesStats& stats);

/// Biased variance of the window around the classic least-squares mean.
SeriesStats window_stats(const KrigingSystem& system, std::span<const double> window);

}  // namespace krig
