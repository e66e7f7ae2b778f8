#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specshrink/shrinkers.hpp"
#include "specshrink/spectrum.hpp"

namespace specshrink {

enum class BetaMode { FixedOnes, RandomIsotropic };
// Uniform: the full grid lambda_min + j delta. Bracket: lambda_star -/+ delta, dropping non-positive values.
enum class RidgeGridMode { Uniform, Bracket };

struct SimConfig {
    std::int64_t n = 2000;
    std::int64_t d = 200;
    double alpha = 0.0;
    double sigma = 1.0;
    double psi = 1.0;
    std::int64_t k = 10;
    double eta = 1.0;
    double lambda_min = 0.1;
    std::int64_t replications = 20;
    std::uint64_t seed = 0;
    BetaMode beta_mode = BetaMode::FixedOnes;
    RidgeGridMode ridge_grid = RidgeGridMode::Bracket;

    double lambda_star() const;
    void validate() const;
};

struct SimRow {
    std::string estimator_id;  // "gd_t=<t>" or "ridge_lambda=<value>"
    bool is_gd = true;
    double parameter = 0.0;    // t or lambda
    double mean_excess = 0.0;
    double std_error = 0.0;
    bool finite = true;
};

struct SimResult {
    std::vector<SimRow> rows;
    double lambda_star = 0.0;
    std::int64_t best_gd = -1;     // index into rows
    std::int64_t best_ridge = -1;  // index into rows
    double ratio = 0.0;            // best GD mean excess / best ridge mean excess
};

// Figure 3 preset at a given lambda_star: psi = 10, eta = 1, k = 10, lambda_min = 0.99 * 10^1.6 / 400,
// bracketing ridge grid, beta = 1 sqrt(psi/d); sigma is solved from lambda_star.
SimConfig fig3_preset(std::int64_t n, std::int64_t d, double alpha, double lambda_star, std::int64_t replications,
                      std::uint64_t seed);
// Log-spaced lambda_star values spanning [10^1.6, 10^2.6] / 400.
std::vector<double> fig3_lambda_stars(std::int64_t points);

std::vector<double> sim_ridge_grid(const SimConfig& cfg);

SimResult run_sim(const SimConfig& cfg);

struct MemberEstimate {
    double mean_excess = 0.0;
    double std_error = 0.0;
};

// Monte Carlo over beta (isotropic, E beta beta^T = psi/d I) and noise for a fixed design.
std::vector<MemberEstimate> simulate_fixed_design(const Eigen::MatrixXd& x, const std::vector<Shrinker>& members,
                                                  double sigma, double psi, std::int64_t replications,
                                                  std::uint64_t seed);

// Iterates 1..k of beta <- beta + eta (g - S beta) from zero.
std::vector<Eigen::VectorXd> gd_iterates(const Eigen::MatrixXd& s_hat, const Eigen::VectorXd& g, double eta,
                                         std::int64_t k);

// Eigenvalues of X^T X / n, non-increasing, dropping those below 1e-12 s_1.
Spectrum empirical_spectrum(const Eigen::MatrixXd& x);

// Draws a design with rows ~ N(0, diag(i^-alpha)) from the given stream.
Eigen::MatrixXd sample_design(std::int64_t n, std::int64_t d, double alpha, std::uint64_t seed, std::uint32_t stream);

}  // namespace specshrink
