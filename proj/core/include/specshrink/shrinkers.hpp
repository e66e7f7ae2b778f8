#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace specshrink {

// Random-effects model configuration: Y = X beta + sigma eps, E[beta beta^T] = (psi/d) I.
struct ProblemParams {
    std::int64_t n = 1;
    std::int64_t d = 1;
    double sigma = 1.0;
    double psi = 1.0;

    double lambda_star() const noexcept { return sigma * sigma * static_cast<double>(d) / (psi * static_cast<double>(n)); }
    double zeta() const noexcept { return psi * static_cast<double>(n) / (static_cast<double>(d) * sigma * sigma); }
    ProblemParams rescale_to_unit_psi() const;
    void validate() const;
};

double optimal_lambda(const ProblemParams& p);

struct Ridge {
    double lambda = 0.0;
};
struct GDConstant {
    double eta = 0.0;
    std::int64_t t = 0;
};
struct GDSchedule {
    std::vector<double> etas;
};
struct ConstantPhi {
    double phi = 0.0;
};

using Shrinker = std::variant<Ridge, GDConstant, GDSchedule, ConstantPhi>;

void validate(const Shrinker& sh);

// Bias factor M(s) = 1 - Phi(s) s.
double m_factor(const Shrinker& sh, double s);
// 1 - M(s), evaluated without cancellation.
double one_minus_m(const Shrinker& sh, double s);
// Phi(s); at s = 0 this is the limiting value.
double phi_value(const Shrinker& sh, double s);
// True when some step has eta * s > 1, outside the [0, 1] guarantee.
bool step_flagged(const Shrinker& sh, double s);

std::string describe(const Shrinker& sh);
const char* kind_name(const Shrinker& sh);

// Decreasing step sizes whose k iterates reproduce the minimax grid.
// The first step jumps from M = 1 to the largest grid value; the remaining
// k - 1 steps follow eta_j = 2c / (s (1/x_+ + (j+1)c)) for j = k-1, ..., 1.
GDSchedule gd_schedule_minimax(double psi_minus, double psi_plus, double s, std::int64_t k);

}  // namespace specshrink
