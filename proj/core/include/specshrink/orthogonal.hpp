#pragma once

#include <cstdint>
#include <vector>

#include "specshrink/classes.hpp"

namespace specshrink {

// Orthogonal design X^T X / n = s I with n = d and unit noise; signal strength psi in [psi_minus, psi_plus].
struct OrthogonalSetting {
    double s = 1.0;
    double psi_minus = 0.0;
    double psi_plus = 1.0;
    std::int64_t k = 1;

    double x_minus() const;
    double x_plus() const;
    void validate() const;
};

// Excess risk (1/s)(x M - 1/x)^2 of a shrinker with bias factor M at signal strength psi.
double orthogonal_excess(double m, double s, double psi);

double minimax_risk(const OrthogonalSetting& set);

// The k + 1 quantities whose maximum the minimax grid minimizes (grid sorted increasingly).
std::vector<double> kp1_terms(const std::vector<double>& phi, const OrthogonalSetting& set);

struct MaxMin {
    double value = 0.0;
    double psi = 0.0;  // a maximizing signal strength
};

// Supremum over a uniform (or logarithmic) psi grid of the best member's excess risk.
MaxMin maxmin_oracle(const EstimatorClass& cls, const OrthogonalSetting& set, std::int64_t psi_points,
                     bool log_spacing = false);

// Exact supremum over the continuum of psi for any class whose members act as constants at s.
MaxMin class_maxmin_exact(const EstimatorClass& cls, const OrthogonalSetting& set);

double ridge_q_star(double j, double tau, double a);
// Closed form for the grid {1/k, ..., 1}; throws PreconditionError when the standing conditions fail.
double ridge_maxmin(const OrthogonalSetting& set);

double gd_tau_star(double b);
double gd_q_star(double tau, double b);
// Exact max-min value of the first k gradient-descent iterates.
double gd_maxmin(const OrthogonalSetting& set, double eta);
// The published closed form b^{j - tau*} max{Q(tau_- v tau*)^2, b Q(tau_- ^ tau*)^2}.
double gd_maxmin_stated(const OrthogonalSetting& set, double eta);

struct DescentResult {
    std::vector<double> grid;
    double value = 0.0;
    double residual = 0.0;
    std::int64_t sweeps = 0;
};

// Equalizes the k + 1 terms by repeatedly re-solving one coordinate against its neighbours.
DescentResult kp1_descent_oracle(const OrthogonalSetting& set, double tol = 1e-13, std::int64_t max_sweeps = 2000000);

}  // namespace specshrink
