#pragma once

#include <cstdint>
#include <vector>

#include "specshrink/classes.hpp"
#include "specshrink/shrinkers.hpp"
#include "specshrink/spectrum.hpp"

namespace specshrink {

// Expected loss decomposition in the units of the loss itself (scaled by psi).
struct RiskBreakdown {
    double total = 0.0;
    double bayes = 0.0;
    double excess = 0.0;
};

struct ClassRiskReport {
    // Members skipped by the ridge bracketing shortcut hold +infinity.
    std::vector<double> per_member_excess;
    std::size_t best_index = 0;
    double best_excess = 0.0;
};

struct ScanOptions {
    bool ridge_bracketing = false;
    // Gradient-descent classes use the per-eigenvalue recursion while k r stays below this.
    double recursion_budget = 1e8;
};

// Risk of optimally tuned ridge: psi * (lambda* int 1/(s+lambda*) dH).
double bayes_risk(const Spectrum& spec, const ProblemParams& p);

RiskBreakdown excess_risk(const Shrinker& sh, const Spectrum& spec, const ProblemParams& p);

ClassRiskReport class_excess(const EstimatorClass& cls, const Spectrum& spec, const ProblemParams& p,
                             const ScanOptions& opts = {});

// Ratio of best-in-class excess risks; throws when the denominator vanishes.
double relative_suboptimality(const EstimatorClass& c1, const EstimatorClass& c2, const Spectrum& spec,
                              const ProblemParams& p, const ScanOptions& opts = {});

// min_b |a - b| / c.
double dist_scaled(double a, const std::vector<double>& grid, double c);

}  // namespace specshrink
