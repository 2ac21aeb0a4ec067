#include "krig/kriging.hpp"

#include <cmath>
#include <stdexcept>

#include "krig/errors.hpp"

namespace krig {

KrigingSystem::KrigingSystem(const CorrelationModel& model, int n) {
    if (n < 1) throw std::invalid_argument("sample size must be at least 1");
    lambda_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        lambda_(i, i) = 1.0;
        for (int k = i + 1; k < n; ++k) {
            const double rho = model(double(k - i));
            lambda_(i, k) = rho;
            lambda_(k, i) = rho;
        }
    }
    llt_.compute(lambda_);
    if (llt_.info() != Eigen::Success)
        throw CorrelationNotPD("correlation matrix is not positive definite for " +
                               family_name(model.family()) + " model");
    lambda_inv_ones_ = llt_.solve(Eigen::VectorXd::Ones(n));
    ones_quad_ = lambda_inv_ones_.sum();
    if (!(ones_quad_ > 0.0) || !std::isfinite(ones_quad_))
        throw CorrelationNotPD("degenerate ones quadratic form");
}

KrigingSolution KrigingSystem::solve(const Eigen::VectorXd& rhs, long j) const {
    const int n = size();
    if (rhs.size() != n) throw std::invalid_argument("rhs length does not match system size");
    if (llt_.info() != Eigen::Success) throw SingularSystem("factorization handle invalid");

    Eigen::VectorXd li_rhs = llt_.solve(rhs);
    double mu = (li_rhs.sum() - 1.0) / ones_quad_;
    Eigen::VectorXd w = li_rhs - mu * lambda_inv_ones_;

    // One refinement pass on the augmented residual keeps the solve tight
    // even for long-range (ill-conditioned) models.
    Eigen::VectorXd r = rhs - lambda_ * w - Eigen::VectorXd::Constant(n, mu);
    const double rc = 1.0 - w.sum();
    Eigen::VectorXd li_r = llt_.solve(r);
    const double dmu = (li_r.sum() - rc) / ones_quad_;
    w += li_r - dmu * lambda_inv_ones_;
    mu += dmu;

    KrigingSolution sol;
    sol.j = j;
    sol.weights = std::move(w);
    sol.multiplier = mu;
    return sol;
}

Eigen::VectorXd KrigingSystem::classic_weights() const {
    Eigen::VectorXd w = lambda_inv_ones_ / ones_quad_;
    w /= w.sum();  // exact sum-to-one after rounding
    return w;
}

Eigen::VectorXd assemble_rhs(const CorrelationModel& model, int n, long j) {
    if (j < n + 1) throw std::invalid_argument("target index j must be at least n+1");
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = model(double(j - (i + 1)));
    return rhs;
}

double estimate_mean(std::span<const double> weights, std::span<const double> values) {
    if (weights.size() != values.size())
        throw std::invalid_argument("weights and values lengths differ");
    double sum_w = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        sum_w += weights[i];
        dot += weights[i] * values[i];
    }
    if (std::abs(sum_w - 1.0) > 1e-6)
        throw std::invalid_argument("weights do not sum to one");
    return dot;
}

double estimate_mean(const Eigen::VectorXd& weights, std::span<const double> values) {
    return estimate_mean(std::span<const double>(weights.data(), std::size_t(weights.size())),
                         values);
}

double constraint_residual(const KrigingSolution& solution, const Eigen::VectorXd& rhs) {
    if (solution.weights.size() != rhs.size())
        throw std::invalid_argument("solution and rhs dimensions differ");
    return solution.weights.dot(rhs) + solution.multiplier;
}

double weighted_variance(const KrigingSolution& solution, const Eigen::VectorXd& rhs,
                         const SeriesStats& stats) {
    return stats.sigma2 * (solution.weights.dot(rhs) - solution.multiplier);
}

double kriging_variance(const KrigingSolution& solution, const Eigen::VectorXd& rhs,
                        const SeriesStats& stats) {
    return stats.sigma2 * (1.0 - (solution.weights.dot(rhs) + solution.multiplier));
}

SeriesStats window_stats(const KrigingSystem& system, std::span<const double> window) {
    if (int(window.size()) != system.size())
        throw std::invalid_argument("window length does not match system size");
    const Eigen::VectorXd w = system.classic_weights();
    SeriesStats stats;
    stats.classic_mean = estimate_mean(w, window);
    double acc = 0.0;
    for (double v : window) acc += (v - stats.classic_mean) * (v - stats.classic_mean);
    stats.sigma2 = acc / double(window.size());
    return stats;
}

}  // namespace krig
