#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "specshrink/errors.hpp"
#include "specshrink/bounds.hpp"
#include "specshrink/risk.hpp"
#include "support/oracles.hpp"

using namespace specshrink;

TEST(Kernels, RidgeFineExamples) {
    EXPECT_DOUBLE_EQ(g_ridge_fine(1.0, 0.5, 0.1), 0.02);
    const double lam = 0.3, delta = 0.05;
    EXPECT_DOUBLE_EQ(g_ridge_fine(lam, lam, delta), delta * delta / (lam * lam * lam));
    EXPECT_NEAR(g_ridge_fine(std::nextafter(lam, 1.0), lam, delta), delta * delta / (lam * lam * lam), 1e-12);
    EXPECT_THROW(g_ridge_fine(1.0, 0.1, 0.2), PreconditionError);
}

TEST(Kernels, RidgeCoarseExamples) {
    const double lam = 0.1, delta = 0.5;
    EXPECT_NEAR(g_ridge_coarse(1.0, lam, delta), 0.25 / (0.1 * 1.1), 1e-14);
    EXPECT_NEAR(g_ridge_coarse(1.0, lam, delta), 2.2727272727, 1e-9);
    EXPECT_DOUBLE_EQ(g_ridge_coarse(delta, lam, delta), delta / (lam * (delta + lam)));
    EXPECT_NEAR(g_ridge_coarse(1e-12, lam, delta) / 1e-12, 1.0 / (lam * lam), 1e-6);
}

TEST(Kernels, RidgeLogExamples) {
    EXPECT_NEAR(g_ridge_log(1.0, 1.0, std::exp(-2.0), 3), 0.125, 1e-15);
    const double lm = 1e-3, lam = 0.02;
    const double factor = std::pow(std::log(1 / lm), 2) / std::pow(9.0, 2);
    EXPECT_NEAR(g_ridge_log(lam, lam, lm, 10), factor / (8 * lam), 1e-12);
    EXPECT_LT(g_ridge_log(1e-14, lam, lm, 10), 1e-9);
}

TEST(Kernels, GDFineBranchContinuity) {
    const double lam = 0.1, eta = 1.0;
    EXPECT_DOUBLE_EQ(g_gd_fine(0.5, lam, eta), 0.4);
    const double b1 = eta * lam * lam;
    EXPECT_NEAR(g_gd_fine(b1, lam, eta), eta * eta * b1, 1e-18);
    EXPECT_NEAR(g_gd_fine(std::nextafter(b1, 1.0), lam, eta), std::pow(b1, 3) / std::pow(lam, 4), 1e-15);
    EXPECT_NEAR(g_gd_fine(lam, lam, eta), 1.0 / lam, 1e-12);
    EXPECT_NEAR(g_gd_fine(std::nextafter(lam, 1.0), lam, eta), 1.0 / lam, 1e-12);
}

TEST(Kernels, GDCoarseBranches) {
    const double lam = 0.01, eta = 0.1;
    const std::int64_t t = 100;
    const double et = eta * t;
    EXPECT_DOUBLE_EQ(g_gd_coarse(0.005, lam, eta, t), 0.005 / (lam * lam));
    EXPECT_NEAR(g_gd_coarse(0.011, lam, eta, t), 1.0 / lam, 1e-9);
    ASSERT_LT(lam, 1.0 / et);
    ASSERT_LT(1.0 / et, 1.0 / (lam * et * et));
    ASSERT_LT(1.0 / (lam * et * et), 1.0 / eta);
    for (double b : {lam, 1.0 / et, 1.0 / (lam * et * et)}) {
        const double left = g_gd_coarse(b, lam, eta, t), right = g_gd_coarse(b * (1 + 1e-12), lam, eta, t);
        EXPECT_NEAR(left, right, 1e-9 * left) << "breakpoint " << b;
    }
}

TEST(GridPosition, Uniform) {
    const auto pos = uniform_grid_position(0.1 + 3.25 * 0.09, 0.1, 11);
    EXPECT_EQ(pos.j, 3);
    EXPECT_NEAR(pos.eps, 0.25, 1e-12);
    const auto top = uniform_grid_position(1.0, 0.1, 11);
    EXPECT_EQ(top.j, 9);
    EXPECT_NEAR(top.eps, 1.0, 1e-12);
}

TEST(Sandwich, RidgeFineContainsExactExcess) {
    const auto spec = Spectrum::power_law(0.5, 10'000, 10'000);
    for (double lam : {0.05, 0.13, 0.4, 0.77}) {
        const double lm = lam / 2;
        const std::int64_t k = 100;
        const auto p = oracle::params_for(lam, 10'000, 10'000, 1.0);
        const auto b = sandwich_ridge_fine(spec, p, lm, k);
        ASSERT_TRUE(b.preconditions_met());
        const double ex = class_excess(ridge_uniform(lm, k), spec, p).best_excess;
        EXPECT_LE(*b.lower, ex);
        EXPECT_LE(ex, *b.upper);
    }
}

TEST(Sandwich, RidgeFineDistanceFactor) {
    const auto spec = Spectrum::power_law(0.5, 1000, 1000);
    const double lm = 0.1, delta = 0.9 / 99;
    const auto mid = sandwich_ridge_fine(spec, oracle::params_for(lm + 40.5 * delta, 1000, 1000, 1.0), lm, 100);
    EXPECT_NEAR(*mid.extra("epsilon"), 0.5, 1e-9);
    EXPECT_NEAR(*mid.upper, 4.0 * 0.25 * *mid.extra("lambda_star_integral"), 1e-12 * *mid.upper);
    const auto near = sandwich_ridge_fine(spec, oracle::params_for(lm + (40 + 1e-9) * delta, 1000, 1000, 1.0), lm, 100);
    EXPECT_LT(*near.upper, 1e-15);
}

TEST(Sandwich, RidgeFineFlagsOutOfRange) {
    const auto spec = Spectrum::power_law(0.5, 100, 100);
    const auto b = sandwich_ridge_fine(spec, oracle::params_for(1.5, 100, 100, 1.0), 0.1, 10);
    EXPECT_FALSE(b.preconditions_met());
    EXPECT_TRUE(b.lower.has_value());
}

TEST(TStar, ContinuityAtZeroAndExample) {
    EXPECT_DOUBLE_EQ(t_star(0.0, 0.1, 2.0), 5.0);
    EXPECT_NEAR(t_star(1e-12, 0.1, 2.0), 5.0, 1e-9);
    EXPECT_NEAR(t_star(1.0, 0.1, 1.0), std::log(2.0) / -std::log(0.9), 1e-14);
    EXPECT_NEAR(t_star(1.0, 0.1, 1.0), 6.5788, 1e-4);
    EXPECT_EQ(t_star(1.0, 1.0, 1.0), 0.0);
    EXPECT_THROW(t_star(2.0, 1.0, 1.0), ArgumentError);
}

TEST(TStar, DefiningIdentityAndMonotone) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 2000; ++rep) {
        const double lam = std::exp(-6 * u(rng)), eta = u(rng) / std::max(1.0, lam);
        const double s = u(rng) * 0.999 / eta, s2 = u(rng) * 0.999 / eta;
        const double t = t_star(s, eta, lam);
        if (s > 0) EXPECT_NEAR(std::exp(t * std::log1p(-eta * s)), lam / (lam + s), 1e-12);
        if (s > s2) EXPECT_LT(t, t_star(s2, eta, lam));
    }
}

TEST(TStar, GapBoundExamples) {
    EXPECT_EQ(t_star_gap_bound(0.0, 0.3, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(t_star_gap_bound(0.5, 0.3, 0.5), 1.0 + 1.0 / (2 * 0.3 * 0.5));
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 2000; ++rep) {
        const double lam = std::exp(-6 * u(rng)), eta = u(rng) / lam, s = u(rng) * lam;
        EXPECT_LE(1 / (eta * lam) - t_star(s, eta, lam), t_star_gap_bound(s, eta, lam) * (1 + 1e-12) + 1e-12);
    }
}

TEST(Descent, DominantTopEigenvalueBlocksThreshold) {
    std::vector<double> v{100.0};
    for (int i = 0; i < 50; ++i) v.push_back(0.02);
    const auto spec = Spectrum::explicit_values(v, 51);
    const double lam = 0.01;
    EXPECT_GT(descent_threshold_A(0.05, 1e-3, spec, lam), 1.0);
    EXPECT_LT(descent_threshold_A(0.05, 1e-12, spec, lam), descent_level());
}

TEST(Descent, MonotoneInU) {
    const auto spec = Spectrum::exp_decay(0.2, 200, 200);
    const double lam = 1e-4, eta = 1e-8;
    double prev = INFINITY;
    for (int i = 1; i <= 400; ++i) {
        const double uu = 2 * lam * std::pow(1.0 / (2 * lam), i / 400.0);
        const double a = descent_threshold_A(uu, eta, spec, lam);
        EXPECT_LE(a, prev);
        prev = a;
    }
}

TEST(Descent, ExpDecayUMinBound) {
    for (double rho : {0.3, 0.7, 1.5}) {
        const double lam = 1e-5;
        const double eta = lam / (8 * std::exp(1.0)) * std::exp(rho) / (1 + std::exp(rho)) * descent_level();
        const auto spec = Spectrum::exp_decay(rho, static_cast<std::int64_t>(40 / rho), static_cast<std::int64_t>(40 / rho));
        const auto bound = u_min_bound_exp(rho, eta, lam);
        ASSERT_TRUE(bound.preconditions_met());
        EXPECT_LE(u_min(eta, spec, lam), *bound.upper);
    }
}

TEST(Descent, FastPolynomialUMinBound) {
    for (double alpha : {1.5, 2.0}) {
        const double lam = 1e-4;
        const double eta = std::pow(lam, 1 - 1 / alpha) / (17 * std::pow(2.0, alpha)) * (alpha - 1) / (1 + alpha) * descent_level();
        const auto spec = Spectrum::power_law(alpha, 200'000, 200'000);
        const auto bound = u_min_bound_fast_poly(alpha, eta, lam);
        ASSERT_TRUE(bound.preconditions_met());
        EXPECT_LE(u_min(eta, spec, lam), *bound.upper);
    }
}

TEST(Theorems, JTermAboveOneThird) {
    const double a = 0.5, lam = 0.2;
    EXPECT_DOUBLE_EQ(j_term(a, lam, 100, 0.1), 1 + std::pow(lam, 3 - 1 / a) / (3 * a - 1));
    EXPECT_DOUBLE_EQ(j_term(1.0 / 3.0, lam, 100, 0.1), 1 + 3 * std::log(100 * 0.1 / lam));
}

TEST(Theorems, SlowLowerExcludesIntegerKappa) {
    const double lam = 0.5, lm = 0.25;
    const auto b = thm_slow_lower(0.5, lam, lm, 100, 1e6);
    bool kappa_ok = true;
    for (const auto& c : b.preconditions)
        if (c.name == "kappa_open") kappa_ok = c.ok;
    EXPECT_FALSE(kappa_ok);
}

TEST(Theorems, CRhoFiniteAtZero) {
    EXPECT_TRUE(std::isfinite(c_rho(0.0)));
    EXPECT_GT(c_rho(0.0), 0.0);
    EXPECT_GT(c_alpha(2.0), 0.0);
}

TEST(Theorems, FastLowerGatesOnK) {
    const auto small = thm_fast_lower(FastDecay::Exponential, 0.5, 1e-4, 5e-5, 100, 1000);
    EXPECT_FALSE(small.preconditions_met());
}

TEST(Theorems, LogGridSigmaMinBoundary) {
    const double sigma = 0.5;
    const auto b = thm_loggrid_ratio(0.5, sigma, sigma / std::sqrt(2.0), 1000, 1000, 5000, 1e5);
    bool ok = true;
    for (const auto& c : b.preconditions)
        if (c.name == "sigma_min") ok = c.ok;
    EXPECT_FALSE(ok);
}

TEST(RiskInflation, Relations) {
    const double lam = 0.05;
    const std::int64_t k = static_cast<std::int64_t>(2 / lam);
    EXPECT_NEAR(risk_inflation(GridKind::FineUniform, k, lam, 0.01), risk_inflation(GridKind::CoarseUniform, k, lam, 0.01), 1e-12);
    EXPECT_LT(risk_inflation(GridKind::Log, 1'000'000, lam, 1e-3), 1e-10);
    EXPECT_NEAR(risk_inflation(GridKind::Log, 3, lam, std::exp(-2.0)), 0.25, 1e-15);
}

TEST(BoundConstants, UnitOverridesEverything) {
    const auto c = BoundConstants::unit();
    EXPECT_EQ(c.slow_upper, 1.0);
    EXPECT_EQ(c.gd_spectral_lower, 1.0);
    const BoundConstants d;
    EXPECT_NEAR(d.gd_spectral_lower, 0.25 * std::pow(1 - std::exp(-1.0 / 32), 2), 1e-18);
    EXPECT_EQ(d.slow_lower, 1.0 / 512);
}
