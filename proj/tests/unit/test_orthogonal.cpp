#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "specshrink/errors.hpp"
#include "specshrink/orthogonal.hpp"

using namespace specshrink;

namespace {
EstimatorClass inverse_grid(std::int64_t k) {
    std::vector<double> lambdas;
    for (std::int64_t j = 1; j <= k; ++j) lambdas.push_back(static_cast<double>(j) / static_cast<double>(k));
    std::vector<Shrinker> m;
    for (double l : lambdas) m.emplace_back(Ridge{l});
    return custom_class(m);
}
}  // namespace

TEST(Orthogonal, ExcessFormula) {
    EXPECT_DOUBLE_EQ(orthogonal_excess(1.0, 1.0, 3.0), 2.25);
    EXPECT_NEAR(orthogonal_excess(1.0 / 4.0, 1.0, 3.0), 0.0, 1e-16);
}

TEST(MinimaxRisk, Examples) {
    EXPECT_EQ(minimax_risk({1.0, 2.0, 2.0, 5}), 0.0);
    EXPECT_DOUBLE_EQ(minimax_risk({1.0, 0.0, 3.0, 2}), 0.0625);
    const OrthogonalSetting a{0.7, 1.0, 9.0, 13}, b{0.7, 1.0, 9.0, 26};
    EXPECT_NEAR(minimax_risk(b) / minimax_risk(a), 0.25, 1e-15);
}

TEST(MinimaxRisk, AgreesWithOracles) {
    const OrthogonalSetting set{1.0, 0.0, 3.0, 2};
    const auto cls = minimax_class(0.0, 3.0, 1.0, 2);
    EXPECT_NEAR(maxmin_oracle(cls, set, 100'000).value, 0.0625, 1e-4 * 0.0625);
    EXPECT_NEAR(class_maxmin_exact(cls, set).value, 0.0625, 1e-12);
    const auto d = kp1_descent_oracle(set);
    EXPECT_NEAR(d.value * d.value / set.s, 0.0625, 1e-4 * 0.0625);
}

TEST(MaxMinOracle, BayesMatchedSingleMemberIsZero) {
    const double s = 1.3, psi = 2.0;
    const OrthogonalSetting set{s, psi, psi, 1};
    const auto cls = custom_class({ConstantPhi{(1.0 - 1.0 / (1.0 + s * psi)) / s}});
    EXPECT_NEAR(maxmin_oracle(cls, set, 2).value, 0.0, 1e-15);
}

TEST(MaxMinOracle, RefinementIsStable) {
    const OrthogonalSetting set{1.0, 4.0, 4.5, 100};
    const auto cls = gd_class(8.0 / 100, 100);
    const double coarse = maxmin_oracle(cls, set, 100'000).value, fine = maxmin_oracle(cls, set, 200'000).value;
    EXPECT_LT(std::fabs(fine - coarse) / fine, 1e-3);
    EXPECT_LE(fine, class_maxmin_exact(cls, set).value * (1 + 1e-12));
}

TEST(RidgeMaxMin, MatchesExactInsideBand) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (int rep = 0; rep < 400 && checked < 60; ++rep) {
        const std::int64_t k = 10 + rng() % 200;
        const double pm = 1.0 + 5.0 * u(rng), pp = pm + 3.0 * u(rng);
        const OrthogonalSetting set{1.0, pm, pp, k};
        double closed;
        try {
            closed = ridge_maxmin(set);
        } catch (const PreconditionError&) {
            continue;
        }
        const double exact = class_maxmin_exact(inverse_grid(k), set).value;
        EXPECT_NEAR(closed, exact, 1e-9 * exact) << "k=" << k << " psi=[" << pm << "," << pp << "]";
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(RidgeMaxMin, PreconditionsNamed) {
    try {
        ridge_maxmin({1.0, 0.5, 0.6, 100});
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.name(), "psi_minus_large");
    }
}

TEST(RidgeMaxMin, QStarVanishesAtZeroTau) { EXPECT_EQ(ridge_q_star(3.0, 0.0, 10.0), 0.0); }

TEST(GDMaxMin, TauStarIdentity) {
    for (double b : {0.1, 0.5, 0.9, 0.999}) {
        EXPECT_NEAR(std::pow(b, gd_tau_star(b)), (1 + b) / 2, 1e-14);
        const double tau = gd_tau_star(b);
        for (double t2 : {0.2 * tau, 0.9 * tau, std::min(0.999, 1.1 * tau)}) EXPECT_LE(gd_q_star(t2, b), gd_q_star(tau, b) + 1e-15);
    }
}

TEST(GDMaxMin, ExactMatchesOracle) {
    for (std::int64_t k : {16, 100}) {
        const OrthogonalSetting set{1.0, 4.0, 4.5, k};
        const double eta = 8.0 / static_cast<double>(k);
        const double closed = gd_maxmin(set, eta);
        const double brute = maxmin_oracle(gd_class(eta, k), set, 100'000).value;
        EXPECT_LT(std::fabs(closed - brute) / closed, 1e-3);
        EXPECT_NEAR(closed, class_maxmin_exact(gd_class(eta, k), set).value, 1e-12 * closed);
    }
}

TEST(GDMaxMin, StatedFormAgreesWhenPeakInsideBand) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int agreed = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const std::int64_t k = 20 + rng() % 200;
        const double eta = (1 + 10 * u(rng)) / static_cast<double>(k), pm = 0.5 + 4 * u(rng), pp = pm + 2 * u(rng);
        const OrthogonalSetting set{1.0, pm, pp, k};
        const double b = 1 - eta;
        const double lg = std::log1p(pm) / -std::log(b);
        if (lg - std::floor(lg) > gd_tau_star(b)) continue;
        if (std::log1p(pp) / -std::log(b) < std::floor(lg) + gd_tau_star(b)) continue;
        double exact;
        try {
            exact = gd_maxmin(set, eta);
        } catch (const PreconditionError&) {
            continue;
        }
        EXPECT_NEAR(gd_maxmin_stated(set, eta), exact, 1e-9 * exact);
        ++agreed;
    }
    EXPECT_GE(agreed, 50);
}

TEST(GDMaxMin, PreconditionsNamed) {
    try {
        gd_maxmin({1.0, 1.0, 2.0, 3}, 0.01);
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.name(), "horizon");
    }
    EXPECT_THROW(gd_maxmin({1.0, 1.0, 2.0, 3}, 1.5), PreconditionError);
}

TEST(MinimaxIsOptimal, BelowRidgeAndGD) {
    for (std::int64_t k : {16, 100, 1000}) {
        const OrthogonalSetting set{1.0, 4.0, 4.5, k};
        EXPECT_LE(minimax_risk(set), ridge_maxmin(set));
        EXPECT_LE(minimax_risk(set), gd_maxmin(set, 8.0 / static_cast<double>(k)));
    }
}

TEST(Kp1, EqualizationAtClosedForm) {
    const OrthogonalSetting set{1.0, 1.0, 10.0, 4};
    const auto terms = kp1_terms(minimax_phi(1.0, 10.0, 1.0, 4), set);
    ASSERT_EQ(terms.size(), 5u);
    const double target = std::sqrt(minimax_risk(set) * set.s);
    for (double t : terms) EXPECT_NEAR(t, target, 1e-10 * target);
}

TEST(Kp1, DescentSingleCoordinate) {
    const OrthogonalSetting set{2.0, 0.5, 4.0, 1};
    const double xm = set.x_minus(), xp = set.x_plus();
    const double phi = (1 / xm + 1 / xp) / (xm + xp);
    const auto d = kp1_descent_oracle(set);
    ASSERT_EQ(d.grid.size(), 1u);
    EXPECT_NEAR(d.grid[0], phi, 1e-12);
}

TEST(Kp1, DescentMatchesClosedForm) {
    const OrthogonalSetting set{1.0, 1.0, 10.0, 4};
    const auto d = kp1_descent_oracle(set);
    const auto phi = minimax_phi(1.0, 10.0, 1.0, 4);
    for (std::size_t j = 0; j < phi.size(); ++j) EXPECT_NEAR(d.grid[j], phi[j], 1e-6 * phi[j]);
    EXPECT_LE(d.residual, 1e-8);
}

TEST(Kp1, OracleBeatsRandomFeasibleGrids) {
    const OrthogonalSetting set{1.0, 1.0, 10.0, 4};
    const auto d = kp1_descent_oracle(set);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1.0 / 11.0, 0.5);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> g(4);
        for (auto& x : g) x = u(rng);
        std::sort(g.begin(), g.end());
        const auto terms = kp1_terms(g, set);
        EXPECT_GE(*std::max_element(terms.begin(), terms.end()), d.value * (1 - 1e-12));
    }
}
