#include "specshrink/shrinkers.hpp"

#include <cmath>
#include <sstream>

#include "specshrink/errors.hpp"

namespace specshrink {

namespace {

template <class... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

void check_s(double s) {
    if (!(s >= 0.0)) throw ArgumentError("eigenvalue s must be non-negative");
}

// log of prod (1 - eta_j s) when every factor is positive.
bool schedule_log(const GDSchedule& g, double s, double& log_m) {
    log_m = 0.0;
    for (double eta : g.etas) {
        const double x = eta * s;
        if (x >= 1.0) return false;
        log_m += std::log1p(-x);
    }
    return true;
}

double schedule_product(const GDSchedule& g, double s) {
    double m = 1.0;
    for (double eta : g.etas) m *= 1.0 - eta * s;
    return m;
}

}  // namespace

ProblemParams ProblemParams::rescale_to_unit_psi() const {
    ProblemParams q = *this;
    q.sigma = sigma / std::sqrt(psi);
    q.psi = 1.0;
    return q;
}

void ProblemParams::validate() const {
    if (n < 1 || d < 1) throw ArgumentError("n and d must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be finite and non-negative");
    if (!(psi > 0.0) || !std::isfinite(psi)) throw ArgumentError("psi must be finite and positive");
}

double optimal_lambda(const ProblemParams& p) {
    p.validate();
    return p.lambda_star();
}

void validate(const Shrinker& sh) {
    std::visit(Overload{
                   [](const Ridge& r) {
                       if (!(r.lambda >= 0.0) || !std::isfinite(r.lambda)) throw ArgumentError("ridge lambda must be >= 0");
                   },
                   [](const GDConstant& g) {
                       if (!(g.eta > 0.0) || !std::isfinite(g.eta)) throw ArgumentError("gd eta must be > 0");
                       if (g.t < 0) throw ArgumentError("gd iteration count must be >= 0");
                   },
                   [](const GDSchedule& g) {
                       for (double eta : g.etas)
                           if (!(eta >= 0.0) || !std::isfinite(eta)) throw ArgumentError("schedule steps must be >= 0");
                   },
                   [](const ConstantPhi& c) {
                       if (!(c.phi >= 0.0) || !std::isfinite(c.phi)) throw ArgumentError("constant phi must be >= 0");
                   },
               },
               sh);
}

double m_factor(const Shrinker& sh, double s) {
    check_s(s);
    if (s == 0.0) return 1.0;
    return std::visit(Overload{
                          [s](const Ridge& r) { return r.lambda / (r.lambda + s); },
                          [s](const GDConstant& g) {
                              if (g.t == 0) return 1.0;
                              const double x = g.eta * s;
                              if (x == 1.0) return 0.0;
                              if (x < 1.0) return std::exp(static_cast<double>(g.t) * std::log1p(-x));
                              return std::pow(1.0 - x, static_cast<double>(g.t));
                          },
                          [s](const GDSchedule& g) {
                              double lm;
                              if (schedule_log(g, s, lm)) return std::exp(lm);
                              return schedule_product(g, s);
                          },
                          [s](const ConstantPhi& c) { return 1.0 - c.phi * s; },
                      },
                      sh);
}

double one_minus_m(const Shrinker& sh, double s) {
    check_s(s);
    if (s == 0.0) return 0.0;
    return std::visit(Overload{
                          [s](const Ridge& r) { return s / (r.lambda + s); },
                          [s](const GDConstant& g) {
                              if (g.t == 0) return 0.0;
                              const double x = g.eta * s;
                              if (x == 1.0) return 1.0;
                              if (x < 1.0) return -std::expm1(static_cast<double>(g.t) * std::log1p(-x));
                              return 1.0 - std::pow(1.0 - x, static_cast<double>(g.t));
                          },
                          [s](const GDSchedule& g) {
                              double lm;
                              if (schedule_log(g, s, lm)) return -std::expm1(lm);
                              return 1.0 - schedule_product(g, s);
                          },
                          [s](const ConstantPhi& c) { return c.phi * s; },
                      },
                      sh);
}

double phi_value(const Shrinker& sh, double s) {
    check_s(s);
    if (s > 0.0) {
        if (const auto* c = std::get_if<ConstantPhi>(&sh)) return c->phi;
        return one_minus_m(sh, s) / s;
    }
    return std::visit(Overload{
                          [](const Ridge& r) { return 1.0 / r.lambda; },
                          [](const GDConstant& g) { return g.eta * static_cast<double>(g.t); },
                          [](const GDSchedule& g) {
                              double acc = 0.0;
                              for (double eta : g.etas) acc += eta;
                              return acc;
                          },
                          [](const ConstantPhi& c) { return c.phi; },
                      },
                      sh);
}

bool step_flagged(const Shrinker& sh, double s) {
    if (const auto* g = std::get_if<GDConstant>(&sh)) return g->eta * s > 1.0;
    if (const auto* g = std::get_if<GDSchedule>(&sh)) {
        for (double eta : g->etas)
            if (eta * s > 1.0) return true;
    }
    return false;
}

const char* kind_name(const Shrinker& sh) {
    return std::visit(Overload{
                          [](const Ridge&) { return "ridge"; },
                          [](const GDConstant&) { return "gd"; },
                          [](const GDSchedule&) { return "gd_schedule"; },
                          [](const ConstantPhi&) { return "constant_phi"; },
                      },
                      sh);
}

std::string describe(const Shrinker& sh) {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overload{
                   [&](const Ridge& r) { os << "ridge(lambda=" << r.lambda << ")"; },
                   [&](const GDConstant& g) { os << "gd(eta=" << g.eta << ",t=" << g.t << ")"; },
                   [&](const GDSchedule& g) { os << "gd_schedule(steps=" << g.etas.size() << ")"; },
                   [&](const ConstantPhi& c) { os << "constant_phi(phi=" << c.phi << ")"; },
               },
               sh);
    return os.str();
}

GDSchedule gd_schedule_minimax(double psi_minus, double psi_plus, double s, std::int64_t k) {
    if (!(psi_minus >= 0.0) || !(psi_plus >= 0.0)) throw ArgumentError("signal bounds must be non-negative");
    if (psi_minus > psi_plus) throw ArgumentError("psi_minus must not exceed psi_plus");
    if (!(s > 0.0)) throw ArgumentError("s must be positive");
    if (k < 1) throw ArgumentError("k must be >= 1");
    const double inv_xp = 1.0 / std::sqrt(1.0 + s * psi_plus);
    const double inv_xm = 1.0 / std::sqrt(1.0 + s * psi_minus);
    const double c = (inv_xm - inv_xp) / static_cast<double>(k);
    const double a_km1 = inv_xp + static_cast<double>(k - 1) * c;
    const double phi_k = a_km1 * inv_xm;
    GDSchedule out;
    out.etas.reserve(static_cast<std::size_t>(k));
    out.etas.push_back((1.0 - phi_k) / s);
    for (std::int64_t j = k - 1; j >= 1; --j)
        out.etas.push_back(2.0 * c / (s * (inv_xp + static_cast<double>(j + 1) * c)));
    return out;
}

}  // namespace specshrink
