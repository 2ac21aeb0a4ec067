#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "krig/errors.hpp"
#include "krig/kriging.hpp"
#include "oracle.hpp"

using namespace krig;

namespace {

oracle::Matrix to_oracle(const Eigen::MatrixXd& m) {
    oracle::Matrix out(std::size_t(m.rows()), std::vector<double>(std::size_t(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            out[std::size_t(i)][std::size_t(k)] = m(i, k);
    return out;
}

// rho(1) = 0.5 exactly, so Lambda rows are Toeplitz [1, 0.5, 0.25, ...].
CorrelationModel half_model() { return CorrelationModel::exponential(1.0 / std::log(2.0)); }

CorrelationModel white_noise() { return CorrelationModel::spherical(0.5); }

double augmented_residual(const KrigingSystem& sys, const KrigingSolution& sol,
                          const Eigen::VectorXd& rhs) {
    const Eigen::VectorXd r =
        sys.lambda() * sol.weights +
        Eigen::VectorXd::Constant(sys.size(), sol.multiplier) - rhs;
    return std::max(r.cwiseAbs().maxCoeff(), std::abs(sol.weights.sum() - 1.0));
}

CorrelationModel random_model(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> fam_d(0, 3);
    std::uniform_real_distribution<double> range_d(0.5, std::max(1.0, double(n) / 2.0));
    std::uniform_real_distribution<double> nug_d(0.05, 0.4);
    std::uniform_real_distribution<double> damp_d(0.1, 1.0);
    const auto family = static_cast<CorrelationFamily>(fam_d(rng));
    return CorrelationModel(family, range_d(rng), nug_d(rng),
                            family == CorrelationFamily::DampedCosine ? damp_d(rng) : 0.0);
}

}  // namespace

TEST_CASE("assemble_lambda entries and structure") {
    const KrigingSystem eye(white_noise(), 3);
    CHECK(eye.lambda().isApprox(Eigen::MatrixXd::Identity(3, 3), 1e-15));

    const KrigingSystem half(half_model(), 3);
    Eigen::MatrixXd expect(3, 3);
    expect << 1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5, 1;
    CHECK(half.lambda().isApprox(expect, 1e-12));
    CHECK_THROWS_AS(KrigingSystem(half_model(), 0), std::invalid_argument);
}

TEST_CASE("numerically singular damped-cosine fails construction") {
    // At this range/damping every off-diagonal entry rounds to 1.0, so the
    // matrix is exactly rank one in doubles; the eigenvalue oracle agrees.
    const auto model = CorrelationModel::damped_cosine(1e18, 1e-9);
    const int n = 8;
    oracle::Matrix lambda(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) lambda[i][k] = i == k ? 1.0 : model(double(std::abs(i - k)));
    CHECK(oracle::min_eigenvalue(lambda) <= 1e-12);
    CHECK_THROWS_AS(KrigingSystem(model, n), CorrelationNotPD);
}

TEST_CASE("assemble_rhs closed forms") {
    const Eigen::VectorXd zero = assemble_rhs(white_noise(), 3, 7);
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

    const auto exp1 = CorrelationModel::exponential(1.0);
    const Eigen::VectorXd r = assemble_rhs(exp1, 2, 3);
    CHECK(r[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const Eigen::VectorXd far = assemble_rhs(CorrelationModel::exponential(2.0), 5, 100);
    CHECK(far.cwiseAbs().maxCoeff() < 1e-20);

    CHECK_THROWS_AS(assemble_rhs(exp1, 5, 5), std::invalid_argument);
}

TEST_CASE("solve_kriging closed forms") {
    SUBCASE("identity system, zero rhs") {
        const KrigingSystem sys(white_noise(), 4);
        const auto sol = sys.solve(Eigen::VectorXd::Zero(4), 10);
        for (int i = 0; i < 4; ++i) CHECK(sol.weights[i] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(sol.multiplier == doctest::Approx(-0.25).epsilon(1e-12));
    }
    SUBCASE("n = 1 degenerate system") {
        const KrigingSystem sys(white_noise(), 1);
        for (double r : {0.0, 0.3, -0.2}) {
            const auto sol = sys.solve(Eigen::VectorXd::Constant(1, r), 2);
            CHECK(sol.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(sol.multiplier == doctest::Approx(r - 1.0).epsilon(1e-14));
        }
    }
    SUBCASE("Toeplitz case against the dense oracle") {
        const KrigingSystem sys(half_model(), 3);
        const Eigen::VectorXd rhs = assemble_rhs(half_model(), 3, 5);
        const auto sol = sys.solve(rhs, 5);
        const auto expect =
            oracle::solve_augmented(to_oracle(sys.lambda()), {rhs.data(), 3});
        for (int i = 0; i < 3; ++i)
            CHECK(sol.weights[i] == doctest::Approx(expect.weights[std::size_t(i)]).epsilon(1e-10));
        CHECK(sol.multiplier == doctest::Approx(expect.multiplier).epsilon(1e-10));
    }
    SUBCASE("rhs length mismatch") {
        const KrigingSystem sys(white_noise(), 3);
        CHECK_THROWS_AS(sys.solve(Eigen::VectorXd::Zero(4), 9), std::invalid_argument);
    }
}

TEST_CASE("classic_ls_weights") {
    const KrigingSystem eye(white_noise(), 5);
    const Eigen::VectorXd w = classic_ls_weights(eye);
    for (int i = 0; i < 5; ++i) CHECK(w[i] == doctest::Approx(0.2).epsilon(1e-14));

    const KrigingSystem pair(CorrelationModel::exponential(3.7), 2);
    const Eigen::VectorXd w2 = classic_ls_weights(pair);
    CHECK(w2[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w2[1] == doctest::Approx(0.5).epsilon(1e-12));

    const KrigingSystem half(half_model(), 3);
    const Eigen::VectorXd w3 = classic_ls_weights(half);
    CHECK(w3[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(w3[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(w3[2] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(w3.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("estimate_mean") {
    const std::vector<double> u{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const std::vector<double> v{2, 4, 6};
    CHECK(estimate_mean(u, v) == doctest::Approx(4.0).epsilon(1e-12));

    const std::vector<double> w{0.4, 0.2, 0.4};
    const std::vector<double> v2{1, 2, 3};
    CHECK(estimate_mean(w, v2) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_mean(w, std::vector<double>{1, 2}), std::invalid_argument);
    const std::vector<double> bad{0.4, 0.4, 0.4};
    CHECK_THROWS_AS(estimate_mean(bad, v2), std::invalid_argument);
}

TEST_CASE("constraint_residual") {
    const KrigingSystem eye(white_noise(), 4);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    const auto sol = eye.solve(zero, 9);
    CHECK(constraint_residual(sol, zero) == doctest::Approx(-0.25).epsilon(1e-12));

    // rhs = xi* F sits exactly at the constraint root.
    const KrigingSystem half(half_model(), 3);
    const double xi_star = 1.0 / (2.0 * half.ones_quadratic());
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(3, xi_star);
    const auto root_sol = half.solve(rhs, 20);
    CHECK(std::abs(constraint_residual(root_sol, rhs)) < 1e-10);
}

TEST_CASE("variance quantities") {
    const SeriesStats unit{1.0, 0.0};
    SUBCASE("identity closed forms") {
        const KrigingSystem eye(white_noise(), 4);
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
        const auto sol = eye.solve(zero, 9);
        CHECK(weighted_variance(sol, zero, unit) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(kriging_variance(sol, zero, unit) == doctest::Approx(1.25).epsilon(1e-12));
    }
    SUBCASE("n = 1 closed forms") {
        const KrigingSystem sys(white_noise(), 1);
        for (double r : {0.0, 0.4, 0.9}) {
            const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(1, r);
            const auto sol = sys.solve(rhs, 2);
            CHECK(weighted_variance(sol, rhs, unit) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(kriging_variance(sol, rhs, unit) ==
                  doctest::Approx(2.0 * (1.0 - r)).epsilon(1e-12));
        }
    }
    SUBCASE("weighted_variance equals the quadratic form") {
        const KrigingSystem half(half_model(), 3);
        const Eigen::VectorXd rhs = assemble_rhs(half_model(), 3, 6);
        const auto sol = half.solve(rhs, 6);
        const double quad = sol.weights.dot(half.lambda() * sol.weights);
        CHECK(weighted_variance(sol, rhs, unit) == doctest::Approx(quad).epsilon(1e-10));
    }
    SUBCASE("vanishing-correlation limit of the kriging variance") {
        for (int n : {5, 20, 80}) {
            const KrigingSystem sys(CorrelationModel::exponential(2.0), n);
            const Eigen::VectorXd rhs = assemble_rhs(CorrelationModel::exponential(2.0), n, 60 * n);
            const auto sol = sys.solve(rhs, 60 * n);
            CHECK(kriging_variance(sol, rhs, unit) ==
                  doctest::Approx(1.0 + 1.0 / sys.ones_quadratic()).epsilon(1e-8));
        }
    }
}

TEST_CASE("solver invariants on randomized instances") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n_d(1, 500);
    std::uniform_real_distribution<double> c_d(-0.5, 0.9);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = n_d(rng);
        const auto model = random_model(rng, n);
        const KrigingSystem sys(model, n);
        const long j = n + 1 + long(rng() % std::uint64_t(4 * n + 1));
        const Eigen::VectorXd rhs = assemble_rhs(model, n, j);
        const auto sol = sys.solve(rhs, j);

        CHECK(std::abs(sol.weights.sum() - 1.0) <= 1e-10);
        CHECK(augmented_residual(sys, sol, rhs) <= 1e-8);

        // w'Lambda w = w.rhs - mu, the identity behind the variance formulas.
        const double quad = sol.weights.dot(sys.lambda() * sol.weights);
        CHECK(std::abs(quad - (sol.weights.dot(rhs) - sol.multiplier)) <= 1e-8);
        CHECK(kriging_variance(sol, rhs, {1.0, 0.0}) >= -1e-8);

        // Constant rhs collapses onto the classic weights.
        const double c = c_d(rng);
        const Eigen::VectorXd crhs = Eigen::VectorXd::Constant(n, c);
        const auto csol = sys.solve(crhs, j);
        const Eigen::VectorXd classic = classic_ls_weights(sys);
        CHECK((csol.weights - classic).cwiseAbs().maxCoeff() <= 1e-9);
        const double s = sys.ones_quadratic();
        CHECK(std::abs(csol.multiplier - (c - 1.0 / s)) <= 1e-9);
        CHECK(std::abs(constraint_residual(csol, crhs) - (2.0 * c - 1.0 / s)) <= 1e-9);
    }
}

TEST_CASE("shift equivariance of the weighted mean") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 2.0);
    const int n = 40;
    const auto model = CorrelationModel::exponential(5.0, 0.1);
    const KrigingSystem sys(model, n);
    std::vector<double> v(n);
    for (double& x : v) x = noise(rng);
    const auto sol = sys.solve(assemble_rhs(model, n, 55), 55);
    const double base = estimate_mean(sol.weights, v);
    for (double c : {-100.0, 0.5, 4096.0}) {
        std::vector<double> shifted = v;
        for (double& x : shifted) x += c;
        CHECK(estimate_mean(sol.weights, shifted) == doctest::Approx(base + c).epsilon(1e-9));
    }
}

TEST_CASE("window_stats") {
    const KrigingSystem eye(white_noise(), 4);
    const std::vector<double> v{1, 3, 5, 7};
    const SeriesStats stats = window_stats(eye, v);
    CHECK(stats.classic_mean == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(stats.sigma2 == doctest::Approx(5.0).epsilon(1e-12));  // biased variance
}
