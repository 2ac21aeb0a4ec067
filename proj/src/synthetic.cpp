#include "krig/synthetic.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "krig/errors.hpp"
#include "krig/scan.hpp"

namespace krig {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(master ^ splitmix64(a)) ^ splitmix64(b));
}

void validate(const Ar1Spec& spec) {
    if (!(std::abs(spec.phi) < 1.0)) throw std::invalid_argument("|phi| must be below 1");
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (spec.length < 2) throw std::invalid_argument("length must be at least 2");
}

std::vector<double> ar1_values(double phi, double mean, double sigma, std::size_t length,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(length);
    double x = sigma * normal(rng);
    v[0] = mean + x;
    const double innov_sd = sigma * std::sqrt(1.0 - phi * phi);
    for (std::size_t t = 1; t < length; ++t) {
        x = phi * x + innov_sd * normal(rng);
        v[t] = mean + x;
    }
    return v;
}

}  // namespace

TimeSeries generate_ar1(const Ar1Spec& spec) {
    validate(spec);
    TimeSeries series;
    series.values = ar1_values(spec.phi, spec.mean, spec.sigma, spec.length, spec.seed);
    return series;
}

CorrelationModel ar1_model(double phi) {
    if (!(phi >= 0.0 && phi < 1.0))
        throw std::invalid_argument("ar1_model requires phi in [0,1)");
    // phi == 0 is white noise; a tiny range keeps rho(h>0) at zero in doubles.
    const double range = phi > 1e-12 ? -1.0 / std::log(phi) : 0.02;
    return CorrelationModel::exponential(range);
}

std::vector<ConvergenceRow> mc_asymptotics(const Ar1Spec& spec, std::span<const int> n_grid,
                                           int replicates) {
    if (replicates < 100) throw std::invalid_argument("need at least 100 replicates");
    if (!(spec.phi >= 0.0)) throw std::invalid_argument("mc_asymptotics requires phi >= 0");
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    const CorrelationModel model = ar1_model(spec.phi);
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_grid.size());

    for (int n : n_grid) {
        if (n < 2) throw std::invalid_argument("grid sample sizes must be at least 2");
        const KrigingSystem system(model, n);

        // The residual does not depend on the data, so the root index is
        // located once per n; the white-noise case has no root and falls
        // back to the classic weights at the far end of the scan.
        const long j_to = 10L * n;
        long j_star = j_to;
        Eigen::VectorXd weights;
        {
            std::vector<ScanPoint> points;
            points.reserve(std::size_t(j_to - n));
            for (long j = n + 1; j <= j_to; ++j) {
                const Eigen::VectorXd rhs = assemble_rhs(model, n, j);
                const KrigingSolution sol = system.solve(rhs, j);
                ScanPoint p;
                p.j = j;
                p.residual = constraint_residual(sol, rhs);
                points.push_back(p);
            }
            try {
                j_star = find_root_j(points, 1e-3).j_star;
            } catch (const NoRootInRange&) {
                j_star = j_to;
            }
            weights = system.solve(assemble_rhs(model, n, j_star), j_star).weights;
        }

        std::vector<double> sq_err(static_cast<std::size_t>(replicates));
        std::vector<double> pred_err(static_cast<std::size_t>(replicates));
        for (int r = 0; r < replicates; ++r) {
            const auto v = ar1_values(spec.phi, spec.mean, spec.sigma, std::size_t(j_star),
                                      mix_seed(spec.seed, std::uint64_t(n), std::uint64_t(r)));
            double est = 0.0;
            for (int i = 0; i < n; ++i) est += weights[i] * v[std::size_t(i)];
            sq_err[std::size_t(r)] = (est - spec.mean) * (est - spec.mean);
            pred_err[std::size_t(r)] = v[std::size_t(j_star - 1)] - est;
        }

        auto mean_of = [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += v;
            return s / double(x.size());
        };
        auto se_of = [&](const std::vector<double>& x, double m) {
            double s = 0.0;
            for (double v : x) s += (v - m) * (v - m);
            return std::sqrt(s / double(x.size() - 1) / double(x.size()));
        };

        ConvergenceRow row;
        row.n = n;
        row.mse_mean_estimator = mean_of(sq_err);
        row.se = se_of(sq_err, row.mse_mean_estimator);

        const double pe_mean = mean_of(pred_err);
        std::vector<double> pe_sq(pred_err.size());
        for (std::size_t i = 0; i < pred_err.size(); ++i)
            pe_sq[i] = (pred_err[i] - pe_mean) * (pred_err[i] - pe_mean);
        row.var_prediction_error =
            mean_of(pe_sq) * double(pred_err.size()) / double(pred_err.size() - 1);
        row.se2 = se_of(pe_sq, mean_of(pe_sq));
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "n,mse_mean_estimator,se,var_prediction_error,se2\n";
    for (const ConvergenceRow& row : rows) {
        out << row.n << ',' << format_double(row.mse_mean_estimator) << ','
            << format_double(row.se) << ',' << format_double(row.var_prediction_error) << ','
            << format_double(row.se2) << '\n';
    }
}

}  // namespace krig
