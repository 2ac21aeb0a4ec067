#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace krig {

enum class CorrelationFamily {
    Exponential,
    Gaussian,
    Spherical,
    DampedCosine,
};

CorrelationFamily family_from_name(const std::string& name);
std::string family_name(CorrelationFamily family);

/// Parametric stationary correlation function rho(h), normalized so that
/// rho(0) = 1 exactly. A nugget in [0,1) scales the continuous part down
/// for h > 0; the damping parameter applies to the damped-cosine family only.
class CorrelationModel {
public:
    CorrelationModel(CorrelationFamily family, double range, double nugget = 0.0,
                     double damping = 0.0);

    static CorrelationModel exponential(double range, double nugget = 0.0);
    static CorrelationModel gaussian(double range, double nugget = 0.0);
    static CorrelationModel spherical(double range, double nugget = 0.0);
    static CorrelationModel damped_cosine(double range, double damping, double nugget = 0.0);

    double operator()(double lag) const;

    CorrelationFamily family() const { return family_; }
    double range() const { return range_; }
    double nugget() const { return nugget_; }
    double damping() const { return damping_; }

private:
    CorrelationFamily family_;
    double range_;
    double nugget_;
    double damping_;
};

inline double eval_correlation(const CorrelationModel& model, double lag) {
    return model(lag);
}

/// Sample autocorrelation at lags 0..L, biased (1/N) normalization so the
/// sequence stays positive semidefinite.
struct EmpiricalAcf {
    std::vector<double> values;  // values[h] for h = 0..max_lag, values[0] == 1
    std::size_t n_used = 0;

    std::size_t max_lag() const { return values.size() - 1; }
};

EmpiricalAcf sample_acf(std::span<const double> series, std::size_t max_lag);

/// Least-squares fit of a single-family correlation model to an empirical ACF
/// over lags 1..L. Grid search over range (and damping) with the scale factor
/// (1 - nugget) profiled out analytically, then golden-section refinement.
/// Deterministic for fixed inputs.
CorrelationModel fit_model(const EmpiricalAcf& acf, CorrelationFamily family);

void write_acf_csv(std::ostream& out, const EmpiricalAcf& acf);

}  // namespace krig
