#include "krig/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "krig/data_io.hpp"
#include "krig/errors.hpp"

namespace krig {

CorrelationFamily family_from_name(const std::string& name) {
    if (name == "exponential") return CorrelationFamily::Exponential;
    if (name == "gaussian") return CorrelationFamily::Gaussian;
    if (name == "spherical") return CorrelationFamily::Spherical;
    if (name == "damped-cosine") return CorrelationFamily::DampedCosine;
    throw std::invalid_argument("unknown correlation family: " + name);
}

std::string family_name(CorrelationFamily family) {
    switch (family) {
        case CorrelationFamily::Exponential: return "exponential";
        case CorrelationFamily::Gaussian: return "gaussian";
        case CorrelationFamily::Spherical: return "spherical";
        case CorrelationFamily::DampedCosine: return "damped-cosine";
    }
    throw std::logic_error("invalid family tag");
}

CorrelationModel::CorrelationModel(CorrelationFamily family, double range, double nugget,
                                   double damping)
    : family_(family), range_(range), nugget_(nugget), damping_(damping) {
    if (!(range > 0.0) || !std::isfinite(range))
        throw std::invalid_argument("correlation range must be positive");
    if (!(nugget >= 0.0 && nugget < 1.0))
        throw std::invalid_argument("nugget must lie in [0,1)");
    if (family == CorrelationFamily::DampedCosine) {
        if (!(damping > 0.0) || !std::isfinite(damping))
            throw std::invalid_argument("damped-cosine requires a positive damping parameter");
    }
}

CorrelationModel CorrelationModel::exponential(double range, double nugget) {
    return {CorrelationFamily::Exponential, range, nugget};
}
CorrelationModel CorrelationModel::gaussian(double range, double nugget) {
    return {CorrelationFamily::Gaussian, range, nugget};
}
CorrelationModel CorrelationModel::spherical(double range, double nugget) {
    return {CorrelationFamily::Spherical, range, nugget};
}
CorrelationModel CorrelationModel::damped_cosine(double range, double damping, double nugget) {
    return {CorrelationFamily::DampedCosine, range, nugget, damping};
}

namespace {

// Continuous part of rho, before the (1 - nugget) scale. Unit value at h = 0+.
double base_shape(CorrelationFamily family, double h, double range, double damping) {
    switch (family) {
        case CorrelationFamily::Exponential:
            return std::exp(-h / range);
        case CorrelationFamily::Gaussian: {
            const double u = h / range;
            return std::exp(-u * u);
        }
        case CorrelationFamily::Spherical: {
            if (h >= range) return 0.0;
            const double u = h / range;
            return 1.0 - 1.5 * u + 0.5 * u * u * u;
        }
        case CorrelationFamily::DampedCosine:
            return std::exp(-h / range) * std::cos(damping * h);
    }
    return 0.0;
}

}  // namespace

double CorrelationModel::operator()(double lag) const {
    if (lag < 0.0) throw std::invalid_argument("lag must be nonnegative");
    if (lag == 0.0) return 1.0;
    return (1.0 - nugget_) * base_shape(family_, lag, range_, damping_);
}

EmpiricalAcf sample_acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n < 4) throw std::invalid_argument("series too short for ACF estimation");
    if (max_lag >= n) throw std::invalid_argument("max_lag must be smaller than the series length");

    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / double(n);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0) throw DegenerateSeries("zero-variance series has no autocorrelation");

    EmpiricalAcf acf;
    acf.n_used = n;
    acf.values.resize(max_lag + 1);
    acf.values[0] = 1.0;
    for (std::size_t h = 1; h <= max_lag; ++h) {
        double num = 0.0;
        for (std::size_t t = 0; t + h < n; ++t)
            num += (series[t] - mean) * (series[t + h] - mean);
        acf.values[h] = num / denom;
    }
    return acf;
}

namespace {

struct FitScore {
    double sse;
    double scale;  // fitted (1 - nugget), clamped to (0, 1]
};

// Profile the scale factor out: for fixed shape, the least-squares optimal
// (1 - nugget) is <b,a>/<b,b> over lags 1..L.
FitScore score_shape(const EmpiricalAcf& acf, CorrelationFamily family, double range,
                     double damping) {
    const std::size_t L = acf.max_lag();
    double bb = 0.0, ba = 0.0;
    for (std::size_t h = 1; h <= L; ++h) {
        const double b = base_shape(family, double(h), range, damping);
        bb += b * b;
        ba += b * acf.values[h];
    }
    double scale = bb > 0.0 ? ba / bb : 1.0;
    scale = std::clamp(scale, 1e-6, 1.0);
    double sse = 0.0;
    for (std::size_t h = 1; h <= L; ++h) {
        const double r = scale * base_shape(family, double(h), range, damping) - acf.values[h];
        sse += r * r;
    }
    return {sse, scale};
}

double golden_refine(double lo, double hi, auto&& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace

CorrelationModel fit_model(const EmpiricalAcf& acf, CorrelationFamily family) {
    const std::size_t L = acf.max_lag();
    if (L < 1) throw std::invalid_argument("ACF must cover at least lag 1");
    if (acf.values.size() != L + 1 || acf.values[0] != 1.0)
        throw std::invalid_argument("malformed empirical ACF");

    const double range_lo = 0.25;
    const double range_hi = 4.0 * double(L);
    const bool damped = family == CorrelationFamily::DampedCosine;

    std::vector<double> dampings;
    if (damped) {
        for (int i = 0; i < 32; ++i)
            dampings.push_back(0.05 + (3.0 - 0.05) * double(i) / 31.0);
    } else {
        dampings.push_back(0.0);
    }

    const int grid_n = 64;
    double best_sse = std::numeric_limits<double>::infinity();
    double best_range = range_lo, best_damping = dampings.front();
    const double log_lo = std::log(range_lo), log_hi = std::log(range_hi);
    for (double d : dampings) {
        for (int i = 0; i < grid_n; ++i) {
            const double r = std::exp(log_lo + (log_hi - log_lo) * double(i) / (grid_n - 1));
            const double sse = score_shape(acf, family, r, d).sse;
            if (sse < best_sse) {
                best_sse = sse;
                best_range = r;
                best_damping = d;
            }
        }
    }

    // Local refinement within one grid step of the best point.
    const double step = (log_hi - log_lo) / (grid_n - 1);
    const double lr = std::log(best_range);
    double damping = best_damping;
    double range = best_range;
    for (int round = 0; round < (damped ? 3 : 1); ++round) {
        range = std::exp(golden_refine(
            std::max(log_lo, lr - step), std::min(log_hi, lr + step),
            [&](double lg) { return score_shape(acf, family, std::exp(lg), damping).sse; }));
        if (damped) {
            const double dstep = (3.0 - 0.05) / 31.0;
            damping = golden_refine(
                std::max(0.05, damping - dstep), std::min(3.0, damping + dstep),
                [&](double d) { return score_shape(acf, family, range, d).sse; });
        }
    }
    const FitScore final_score = score_shape(acf, family, range, damping);
    if (final_score.sse > best_sse) {  // refinement never worsens the grid optimum
        range = best_range;
        damping = best_damping;
    }
    const double nugget = std::clamp(1.0 - score_shape(acf, family, range, damping).scale,
                                     0.0, 1.0 - 1e-9);
    return CorrelationModel(family, range, nugget, damping);
}

void write_acf_csv(std::ostream& out, const EmpiricalAcf& acf) {
    out << "lag,acf\n";
    for (std::size_t h = 0; h < acf.values.size(); ++h)
        out << h << ',' << format_double(acf.values[h]) << '\n';
}

}  // namespace krig
