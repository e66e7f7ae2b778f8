#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specshrink/shrinkers.hpp"
#include "specshrink/spectrum.hpp"

namespace specshrink {

// Multiplicative constants of the bounds; unit() replaces each by 1.
struct BoundConstants {
    double ridge_fine_lower = 1.0 / 32.0;
    double ridge_fine_upper = 4.0;
    double ridge_coarse_lower = 0.25;
    double ridge_coarse_upper = 1.0;
    double ridge_log_lower = 1.0 / 12.0;
    double ridge_log_upper = 1.0;
    double gd_fine_upper = 18.0;
    double gd_fine_lower = 1.0 / 16.0;
    double gd_coarse_upper = 2.0;
    double gd_spectral_lower;  // (1/4)(1 - e^{-1/32})^2
    double slow_upper = 1152.0;
    double slow_lower = 1.0 / 512.0;
    double slow_lower_proof = 1.0 / 1024.0;
    double loggrid_upper = 6912.0;
    double loggrid_lower = 1.0 / 128.0;
    std::optional<double> c_rho;    // overrides the closed form when set
    std::optional<double> c_alpha;  // overrides the closed form when set

    BoundConstants();
    static BoundConstants unit();
};

// 1 - e^{-1/64}, the descent level used by u_min.
double descent_level();
double c_rho(double rho);
double c_alpha(double alpha);

enum class BoundSide { Both, Lower, Upper };

struct NamedCheck {
    std::string name;
    bool ok;
    BoundSide side = BoundSide::Both;
};

struct BoundReport {
    std::optional<double> lower;
    std::optional<double> upper;
    std::vector<std::pair<std::string, double>> constants;
    std::vector<NamedCheck> preconditions;
    std::vector<std::pair<std::string, double>> thresholds;
    std::vector<std::pair<std::string, double>> extras;

    bool preconditions_met() const;
    bool lower_valid() const;
    bool upper_valid() const;
    std::optional<double> extra(const std::string& name) const;
};

// ---- kernels -------------------------------------------------------------
double g_ridge_fine(double s, double lambda_star, double delta);
double g_ridge_coarse(double s, double lambda_star, double delta);
double g_ridge_log(double s, double lambda_star, double lambda_min, std::int64_t k);
double g_gd_fine(double s, double lambda_star, double eta);
double g_gd_coarse(double s, double lambda_star, double eta, std::int64_t t);

// ---- class-level sandwiches (values in loss units, scaled by psi) ----------
BoundReport sandwich_ridge_fine(const Spectrum& spec, const ProblemParams& p, double lambda_min, std::int64_t k,
                                const BoundConstants& c = {});
BoundReport sandwich_ridge_coarse(const Spectrum& spec, const ProblemParams& p, std::int64_t k,
                                  const BoundConstants& c = {});
BoundReport sandwich_ridge_log(const Spectrum& spec, const ProblemParams& p, double lambda_min, std::int64_t k,
                               const BoundConstants& c = {});
BoundReport sandwich_gd_fine(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                             const BoundConstants& c = {});
BoundReport sandwich_gd_coarse(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                               const BoundConstants& c = {});
BoundReport gd_spectral_lower(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                              const BoundConstants& c = {});

// ---- optimal iteration count and descent machinery -------------------------
double t_star(double s, double eta, double lambda_star);
double t_star_gap_bound(double u, double eta, double lambda_star);
double descent_threshold_A(double u, double eta, const Spectrum& spec, double lambda_star);
// Returns +infinity when the threshold is never reached.
double u_min(double eta, const Spectrum& spec, double lambda_star, double rel_tol = 1e-10);
BoundReport u_min_bound_exp(double rho, double eta, double lambda_star);
BoundReport u_min_bound_fast_poly(double alpha, double eta, double lambda_star);

// ---- relative sub-optimality theorems -------------------------------------
double j_term(double alpha, double lambda_star, std::int64_t k, double lambda_min);
BoundReport thm_slow_upper(double alpha, double lambda_star, double lambda_min, std::int64_t k, double r,
                           const BoundConstants& c = {});
BoundReport thm_slow_lower(double alpha, double lambda_star, double lambda_min, std::int64_t k, double r,
                           const BoundConstants& c = {});

enum class FastDecay { Exponential, PowerLaw };
BoundReport thm_fast_lower(FastDecay decay, double rate, double lambda_star, double lambda_min, std::int64_t k,
                           double r, const BoundConstants& c = {});

BoundReport thm_loggrid_ratio(double alpha, double sigma, double sigma_min, std::int64_t n, std::int64_t d,
                              std::int64_t k, double r, const BoundConstants& c = {});

enum class GridKind { FineUniform, CoarseUniform, Log };
double risk_inflation(GridKind kind, std::int64_t k, double lambda_star, double lambda_min);

// Position of lambda_star on the uniform grid: lambda_min + (j + eps) delta.
struct GridPosition {
    std::int64_t j;
    double eps;
};
GridPosition uniform_grid_position(double lambda_star, double lambda_min, std::int64_t k);
// Position on the log grid: lambda_star = exp((j - 2 + eps) log(lambda_min)/(k - 1)).
GridPosition log_grid_position(double lambda_star, double lambda_min, std::int64_t k);

}  // namespace specshrink
