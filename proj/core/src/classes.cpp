#include "specshrink/classes.hpp"

#include <cmath>

#include "specshrink/errors.hpp"

namespace specshrink {

const char* EstimatorClass::kind() const noexcept {
    switch (meta.index()) {
        case 0: return "gd";
        case 1: return "gd_schedule";
        case 2: return "ridge_uniform";
        case 3: return "ridge_log";
        case 4: return "minimax";
        default: return "custom";
    }
}

bool same_class(const EstimatorClass& a, const EstimatorClass& b) {
    if (std::holds_alternative<CustomMeta>(a.meta)) return false;
    return a.meta == b.meta;
}

EstimatorClass gd_class(double eta, std::int64_t k) {
    if (k < 1) throw ArgumentError("gd class requires k >= 1");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ArgumentError("gd class requires eta > 0");
    EstimatorClass out;
    out.meta = GDClassMeta{eta, k};
    out.members.reserve(static_cast<std::size_t>(k));
    for (std::int64_t t = 1; t <= k; ++t) out.members.emplace_back(GDConstant{eta, t});
    return out;
}

double default_gd_step(std::int64_t k, double lambda_min) {
    if (k < 1 || !(lambda_min > 0.0)) throw ArgumentError("default step needs k >= 1 and lambda_min > 0");
    return 1.0 / (static_cast<double>(k) * lambda_min);
}

EstimatorClass gd_schedule_class(const GDSchedule& schedule) {
    if (schedule.etas.empty()) throw ArgumentError("schedule class requires at least one step");
    validate(Shrinker{schedule});
    EstimatorClass out;
    out.meta = GDScheduleMeta{schedule.etas};
    for (std::size_t t = 1; t <= schedule.etas.size(); ++t)
        out.members.emplace_back(GDSchedule{std::vector<double>(schedule.etas.begin(), schedule.etas.begin() + static_cast<std::ptrdiff_t>(t))});
    return out;
}

EstimatorClass ridge_uniform(double lambda_min, std::int64_t k) {
    if (k < 2) throw ArgumentError("uniform ridge grid requires k >= 2");
    if (!(lambda_min >= 0.0 && lambda_min < 1.0)) throw ArgumentError("uniform ridge grid requires lambda_min in [0, 1)");
    const double delta = (1.0 - lambda_min) / static_cast<double>(k - 1);
    EstimatorClass out;
    out.meta = RidgeUniformMeta{lambda_min, k, delta};
    out.members.reserve(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) out.members.emplace_back(Ridge{lambda_min + static_cast<double>(j) * delta});
    return out;
}

EstimatorClass ridge_log(double lambda_min, std::int64_t k) {
    if (k < 2) throw ArgumentError("log ridge grid requires k >= 2");
    if (!(lambda_min > 0.0 && lambda_min < 1.0)) throw ArgumentError("log ridge grid requires lambda_min in (0, 1)");
    const double delta_log = std::log(1.0 / lambda_min) / static_cast<double>(k - 1);
    EstimatorClass out;
    out.meta = RidgeLogMeta{lambda_min, k, delta_log};
    out.members.reserve(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
        const double lam = (j == k - 1) ? lambda_min : std::exp(-static_cast<double>(j) * delta_log);
        out.members.emplace_back(Ridge{lam});
    }
    return out;
}

std::vector<double> minimax_phi(double psi_minus, double psi_plus, double s, std::int64_t k) {
    if (!(psi_minus >= 0.0) || !(psi_plus >= 0.0)) throw ArgumentError("signal bounds must be non-negative");
    if (psi_minus > psi_plus) throw ArgumentError("psi_minus must not exceed psi_plus");
    if (!(s > 0.0)) throw ArgumentError("s must be positive");
    if (k < 1) throw ArgumentError("k must be >= 1");
    const double inv_xp = 1.0 / std::sqrt(1.0 + s * psi_plus);
    const double inv_xm = 1.0 / std::sqrt(1.0 + s * psi_minus);
    const double c = (inv_xm - inv_xp) / static_cast<double>(k);
    std::vector<double> phi(static_cast<std::size_t>(k));
    for (std::int64_t j = 1; j <= k; ++j) {
        const double a_prev = inv_xp + static_cast<double>(j - 1) * c;
        const double a_cur = (j == k) ? inv_xm : inv_xp + static_cast<double>(j) * c;
        phi[static_cast<std::size_t>(j - 1)] = a_prev * a_cur;
    }
    return phi;
}

EstimatorClass minimax_class(double psi_minus, double psi_plus, double s, std::int64_t k) {
    const auto phi = minimax_phi(psi_minus, psi_plus, s, k);
    const double c = (1.0 / std::sqrt(1.0 + s * psi_minus) - 1.0 / std::sqrt(1.0 + s * psi_plus)) / static_cast<double>(k);
    EstimatorClass out;
    out.meta = MinimaxMeta{psi_minus, psi_plus, s, k, c};
    out.members.reserve(phi.size());
    for (double m : phi) out.members.emplace_back(ConstantPhi{(1.0 - m) / s});
    return out;
}

EstimatorClass custom_class(std::vector<Shrinker> members) {
    if (members.empty()) throw ArgumentError("custom class requires at least one member");
    for (const auto& m : members) validate(m);
    EstimatorClass out;
    out.members = std::move(members);
    out.meta = CustomMeta{};
    return out;
}

std::vector<double> ridge_lambdas(const EstimatorClass& cls) {
    std::vector<double> out;
    out.reserve(cls.size());
    for (const auto& m : cls.members) {
        const auto* r = std::get_if<Ridge>(&m);
        if (!r) throw ArgumentError("class contains non-ridge members");
        out.push_back(r->lambda);
    }
    return out;
}

bool fine_discretization(double lambda_min, std::int64_t k, double lambda_star) {
    if (k < 2) return false;
    const double delta = (1.0 - lambda_min) / static_cast<double>(k - 1);
    return delta > 0.0 && delta <= lambda_star;
}

}  // namespace specshrink
