#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "specshrink/shrinkers.hpp"

namespace specshrink {

struct GDClassMeta {
    double eta;
    std::int64_t k;
    bool operator==(const GDClassMeta&) const = default;
};
struct GDScheduleMeta {
    std::vector<double> etas;
    bool operator==(const GDScheduleMeta&) const = default;
};
struct RidgeUniformMeta {
    double lambda_min;
    std::int64_t k;
    double delta;
    bool operator==(const RidgeUniformMeta&) const = default;
};
struct RidgeLogMeta {
    double lambda_min;
    std::int64_t k;
    double delta_log;
    bool operator==(const RidgeLogMeta&) const = default;
};
struct MinimaxMeta {
    double psi_minus;
    double psi_plus;
    double s;
    std::int64_t k;
    double c;
    bool operator==(const MinimaxMeta&) const = default;
};
struct CustomMeta {
    bool operator==(const CustomMeta&) const = default;
};

using ClassMeta = std::variant<GDClassMeta, GDScheduleMeta, RidgeUniformMeta, RidgeLogMeta, MinimaxMeta, CustomMeta>;

struct EstimatorClass {
    std::vector<Shrinker> members;
    ClassMeta meta = CustomMeta{};

    std::size_t size() const noexcept { return members.size(); }
    const char* kind() const noexcept;
};

// Parameter-level equality for built grids; custom classes never compare equal.
bool same_class(const EstimatorClass& a, const EstimatorClass& b);

// Iterates t = 1..k of constant-step gradient descent.
EstimatorClass gd_class(double eta, std::int64_t k);
// Step size 1 / (k lambda_min) used when comparing against ridge grids.
double default_gd_step(std::int64_t k, double lambda_min);
// Prefixes of a step schedule: member t runs the first t steps.
EstimatorClass gd_schedule_class(const GDSchedule& schedule);
// lambda_min + j delta, j = 0..k-1, delta = (1 - lambda_min)/(k - 1).
EstimatorClass ridge_uniform(double lambda_min, std::int64_t k);
// exp(-(j-1) log(1/lambda_min)/(k-1)), j = 1..k (decreasing).
EstimatorClass ridge_log(double lambda_min, std::int64_t k);
// Minimax grid for the orthogonal design; member j has M = phi_j.
EstimatorClass minimax_class(double psi_minus, double psi_plus, double s, std::int64_t k);
EstimatorClass custom_class(std::vector<Shrinker> members);

// phi_j = a_{j-1} a_j with a_j = 1/x_+ + j c, j = 1..k.
std::vector<double> minimax_phi(double psi_minus, double psi_plus, double s, std::int64_t k);

// Regularization values of an all-ridge class, in member order.
std::vector<double> ridge_lambdas(const EstimatorClass& cls);

// delta <= lambda_star for the uniform grid (fine discretization).
bool fine_discretization(double lambda_min, std::int64_t k, double lambda_star);

}  // namespace specshrink
