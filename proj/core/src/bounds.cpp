#include "specshrink/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specshrink/errors.hpp"

namespace specshrink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

double ridge_fine_raw(double s, double lam, double delta) {
    return s > lam ? delta * delta / (lam * s * s) : delta * delta * s / (lam * lam * lam * lam);
}
double ridge_coarse_raw(double s, double lam, double delta) {
    return s / (lam * (s + lam)) * std::min(delta * delta / (s * s), 1.0);
}
double ridge_log_raw(double s, double lam, double lambda_min, std::int64_t k) {
    const double f = std::log(1.0 / lambda_min) / static_cast<double>(k - 1);
    const double q = lam + s;
    return f * f * s * lam / (q * q * q);
}
double gd_fine_raw(double s, double lam, double eta) {
    if (s > lam) return lam / (s * s);
    if (s > eta * lam * lam) return s * s * s / (lam * lam * lam * lam);
    return eta * eta * s;
}
double gd_coarse_raw(double s, double lam, double eta, std::int64_t t) {
    const double et = eta * static_cast<double>(t);
    if (s <= lam) return s / (lam * lam);
    if (s <= 1.0 / et) return 1.0 / lam;
    if (s <= 1.0 / (lam * et * et)) return 1.0 / (lam * sq(sq(et * s)));
    return lam / (s * s);
}

void add_check(BoundReport& r, std::string name, bool ok, BoundSide side = BoundSide::Both) {
    r.preconditions.push_back({std::move(name), ok, side});
}

double require_lambda_star(const ProblemParams& p) {
    p.validate();
    if (!(p.sigma > 0.0)) throw ArgumentError("bounds require sigma > 0");
    return p.lambda_star();
}

double min_frac(double e) { return std::min(e, 1.0 - e); }

}  // namespace

BoundConstants::BoundConstants() : gd_spectral_lower(0.25 * sq(-std::expm1(-1.0 / 32.0))) {}

BoundConstants BoundConstants::unit() {
    BoundConstants c;
    c.ridge_fine_lower = c.ridge_fine_upper = 1.0;
    c.ridge_coarse_lower = c.ridge_coarse_upper = 1.0;
    c.ridge_log_lower = c.ridge_log_upper = 1.0;
    c.gd_fine_upper = c.gd_fine_lower = c.gd_coarse_upper = 1.0;
    c.gd_spectral_lower = 1.0;
    c.slow_upper = c.slow_lower = c.slow_lower_proof = 1.0;
    c.loggrid_upper = c.loggrid_lower = 1.0;
    c.c_rho = 1.0;
    c.c_alpha = 1.0;
    return c;
}

double descent_level() { return -std::expm1(-1.0 / 64.0); }

double c_rho(double rho) {
    const double l = descent_level();
    return l * l * l / (512.0 * std::exp(2.0) * (1.0 + std::exp(2.0 * rho)) * sq(l + 2.0 * std::exp(rho)));
}

double c_alpha(double alpha) {
    const double l = descent_level();
    const double num = (alpha - 1.0) / alpha * sq(-std::expm1(-1.0 / 32.0));
    const double den = 32.0 * std::pow(2.0, (1.0 + 2.0 * alpha) * (2.0 + alpha * (1.0 + alpha))) * (1.0 + 2.0 * alpha) *
                       std::pow(1.0 + std::pow(2.0, 4.0 + 3.0 * alpha) * l, (1.0 + 2.0 * alpha) / (alpha + 1.0));
    return num / den;
}

bool BoundReport::preconditions_met() const {
    return std::all_of(preconditions.begin(), preconditions.end(), [](const NamedCheck& c) { return c.ok; });
}
bool BoundReport::lower_valid() const {
    return lower.has_value() && std::all_of(preconditions.begin(), preconditions.end(), [](const NamedCheck& c) {
               return c.ok || c.side == BoundSide::Upper;
           });
}
bool BoundReport::upper_valid() const {
    return upper.has_value() && std::all_of(preconditions.begin(), preconditions.end(), [](const NamedCheck& c) {
               return c.ok || c.side == BoundSide::Lower;
           });
}
std::optional<double> BoundReport::extra(const std::string& name) const {
    for (const auto& [k, v] : extras)
        if (k == name) return v;
    for (const auto& [k, v] : thresholds)
        if (k == name) return v;
    return std::nullopt;
}

// ---- kernels -------------------------------------------------------------

double g_ridge_fine(double s, double lambda_star, double delta) {
    if (!(s > 0.0)) throw ArgumentError("kernel requires s > 0");
    if (!(delta > 0.0 && delta <= lambda_star))
        throw PreconditionError("fine_window", "fine ridge kernel requires 0 < delta <= lambda_star");
    return ridge_fine_raw(s, lambda_star, delta);
}

double g_ridge_coarse(double s, double lambda_star, double delta) {
    if (!(s > 0.0) || !(lambda_star > 0.0) || !(delta > 0.0)) throw ArgumentError("coarse ridge kernel requires positive arguments");
    return ridge_coarse_raw(s, lambda_star, delta);
}

double g_ridge_log(double s, double lambda_star, double lambda_min, std::int64_t k) {
    if (!(s > 0.0) || !(lambda_star > 0.0)) throw ArgumentError("log ridge kernel requires s, lambda_star > 0");
    if (!(lambda_min > 0.0 && lambda_min < 1.0) || k < 2) throw ArgumentError("log ridge kernel requires lambda_min in (0,1), k >= 2");
    return ridge_log_raw(s, lambda_star, lambda_min, k);
}

double g_gd_fine(double s, double lambda_star, double eta) {
    if (!(s > 0.0) || !(lambda_star > 0.0) || !(eta > 0.0)) throw ArgumentError("gd kernel requires positive arguments");
    return gd_fine_raw(s, lambda_star, eta);
}

double g_gd_coarse(double s, double lambda_star, double eta, std::int64_t t) {
    if (!(s > 0.0) || !(lambda_star > 0.0) || !(eta > 0.0) || t < 1)
        throw ArgumentError("coarse gd kernel requires positive arguments and t >= 1");
    return gd_coarse_raw(s, lambda_star, eta, t);
}

GridPosition uniform_grid_position(double lambda_star, double lambda_min, std::int64_t k) {
    const double delta = (1.0 - lambda_min) / static_cast<double>(k - 1);
    const double pos = (lambda_star - lambda_min) / delta;
    auto j = static_cast<std::int64_t>(std::floor(pos));
    if (j > k - 2) j = k - 2;
    return {j, pos - static_cast<double>(j)};
}

GridPosition log_grid_position(double lambda_star, double lambda_min, std::int64_t k) {
    const double step = std::log(1.0 / lambda_min) / static_cast<double>(k - 1);
    const double pos = std::log(1.0 / lambda_star) / step;
    const auto base = static_cast<std::int64_t>(std::floor(pos));
    return {base + 2, pos - static_cast<double>(base)};
}

// ---- sandwiches -----------------------------------------------------------

BoundReport sandwich_ridge_fine(const Spectrum& spec, const ProblemParams& p, double lambda_min, std::int64_t k,
                                const BoundConstants& c) {
    if (k < 2) throw ArgumentError("ridge grid requires k >= 2");
    const double lam = require_lambda_star(p);
    const double delta = (1.0 - lambda_min) / static_cast<double>(k - 1);
    const auto pos = uniform_grid_position(lam, lambda_min, k);
    BoundReport r;
    add_check(r, "lambda_range", 0.0 <= lambda_min && lambda_min <= lam && lam <= 1.0);
    add_check(r, "fine_window", delta > 0.0 && delta <= lam);
    add_check(r, "grid_index", pos.j >= 0 && pos.j <= k - 2 && pos.eps >= 0.0 && pos.eps <= 1.0);
    const double m = min_frac(pos.eps);
    const double integral = lam * integrate(spec, [&](double s) { return ridge_fine_raw(s, lam, delta); });
    r.lower = p.psi * c.ridge_fine_lower * m * m * integral;
    r.upper = p.psi * c.ridge_fine_upper * m * m * integral;
    r.constants = {{"lower", c.ridge_fine_lower}, {"upper", c.ridge_fine_upper}};
    r.extras = {{"lambda_star", lam}, {"delta", delta}, {"j", static_cast<double>(pos.j)}, {"epsilon", pos.eps},
                {"lambda_star_integral", integral}};
    return r;
}

BoundReport sandwich_ridge_coarse(const Spectrum& spec, const ProblemParams& p, std::int64_t k, const BoundConstants& c) {
    if (k < 2) throw ArgumentError("ridge grid requires k >= 2");
    const double lam = require_lambda_star(p);
    const double delta = 1.0 / static_cast<double>(k - 1);
    const double offset = delta - lam;
    BoundReport r;
    add_check(r, "coarse_offset", offset > 0.0 && offset <= 0.5 * delta);
    const double integral = lam * integrate(spec, [&](double s) { return ridge_coarse_raw(s, lam, delta); });
    const double ratio = sq(offset / delta);
    r.lower = p.psi * c.ridge_coarse_lower * ratio * integral;
    r.upper = p.psi * c.ridge_coarse_upper * ratio * integral;
    r.constants = {{"lower", c.ridge_coarse_lower}, {"upper", c.ridge_coarse_upper}};
    r.extras = {{"lambda_star", lam}, {"delta", delta}, {"delta_prime", offset}, {"lambda_star_integral", integral}};
    return r;
}

BoundReport sandwich_ridge_log(const Spectrum& spec, const ProblemParams& p, double lambda_min, std::int64_t k,
                               const BoundConstants& c) {
    if (k < 2) throw ArgumentError("ridge grid requires k >= 2");
    if (!(lambda_min > 0.0 && lambda_min < 1.0)) throw ArgumentError("log grid requires lambda_min in (0,1)");
    const double lam = require_lambda_star(p);
    const auto pos = log_grid_position(lam, lambda_min, k);
    BoundReport r;
    add_check(r, "log_index", pos.j > 2 && pos.j < k);
    add_check(r, "epsilon_open", pos.eps > 0.0 && pos.eps < 1.0);
    add_check(r, "k_log", static_cast<double>(k) >= 1.0 + 3.0 * std::log(1.0 / lambda_min));
    const double m = min_frac(pos.eps);
    const double integral = lam * integrate(spec, [&](double s) { return ridge_log_raw(s, lam, lambda_min, k); });
    r.lower = p.psi * c.ridge_log_lower * m * integral;
    r.upper = p.psi * c.ridge_log_upper * m * integral;
    r.constants = {{"lower", c.ridge_log_lower}, {"upper", c.ridge_log_upper}};
    r.extras = {{"lambda_star", lam}, {"j_star", static_cast<double>(pos.j)}, {"epsilon", pos.eps},
                {"lambda_star_integral", integral},
                {"lower_squared_distance", p.psi * c.ridge_log_lower * m * m * integral}};
    return r;
}

BoundReport sandwich_gd_fine(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                             const BoundConstants& c) {
    if (!(eta > 0.0) || t < 1) throw ArgumentError("gd sandwich requires eta > 0 and t >= 1");
    const double lam = require_lambda_star(p);
    const double inv = 1.0 / (eta * lam);
    const double ell = std::floor(inv);
    const double kappa = inv - ell;
    BoundReport r;
    add_check(r, "lambda_star_unit", lam > 0.0 && lam <= 1.0);
    add_check(r, "step", eta <= 1.0 / std::max(spec.s1(), lam));
    add_check(r, "horizon", static_cast<double>(t) >= std::ceil(inv), BoundSide::Upper);
    add_check(r, "kappa_open", kappa > 0.0 && kappa < 1.0, BoundSide::Lower);
    const double full = lam * integrate(spec, [&](double s) { return gd_fine_raw(s, lam, eta); });
    const double cut = eta * lam * lam * kappa / 4.0;
    const double restricted =
        cut > 0.0 ? lam * integrate_range(spec, [&](double s) { return gd_fine_raw(s, lam, eta); }, 0.0, cut) : 0.0;
    const double mk = min_frac(kappa);
    r.upper = p.psi * c.gd_fine_upper * full;
    r.lower = p.psi * c.gd_fine_lower * mk * mk * restricted;
    r.constants = {{"lower", c.gd_fine_lower}, {"upper", c.gd_fine_upper}};
    r.extras = {{"lambda_star", lam}, {"kappa", kappa}, {"ell", ell}, {"lambda_star_integral", full},
                {"restricted_integral", restricted}};
    return r;
}

BoundReport sandwich_gd_coarse(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                               const BoundConstants& c) {
    if (!(eta > 0.0) || t < 1) throw ArgumentError("gd sandwich requires eta > 0 and t >= 1");
    const double lam = require_lambda_star(p);
    const double et = eta * static_cast<double>(t);
    BoundReport r;
    add_check(r, "step_strict", eta < 1.0 / std::max(spec.s1(), lam));
    add_check(r, "short_horizon", static_cast<double>(t) < (1.0 - eta * lam) / (2.0 * eta * lam));
    add_check(r, "branch_order", lam < 1.0 / et && 1.0 / et < 1.0 / (lam * et * et) && 1.0 / (lam * et * et) < 1.0 / eta);
    const double integral = lam * integrate(spec, [&](double s) { return gd_coarse_raw(s, lam, eta, t); });
    r.upper = p.psi * c.gd_coarse_upper * integral;
    r.constants = {{"upper", c.gd_coarse_upper}};
    r.extras = {{"lambda_star", lam}, {"lambda_star_integral", integral}};
    return r;
}

BoundReport gd_spectral_lower(const Spectrum& spec, const ProblemParams& p, double eta, std::int64_t t,
                              const BoundConstants& c) {
    if (!(eta > 0.0) || t < 1) throw ArgumentError("gd bound requires eta > 0 and t >= 1");
    const double lam = require_lambda_star(p);
    const double s1 = spec.s1();
    const double um = u_min(eta, spec, lam);
    BoundReport r;
    add_check(r, "step_log", eta <= 1.0 / (64.0 * s1 * std::log1p(s1 / lam)));
    add_check(r, "horizon", static_cast<double>(t) >= 1.0 / (eta * lam));
    add_check(r, "umin_small", um < s1 / 2.0);
    double integral = 0.0;
    if (2.0 * um < s1) integral = lam * integrate_range(spec, [&](double s) { return gd_fine_raw(s, lam, eta); }, 2.0 * um, s1);
    r.lower = p.psi * c.gd_spectral_lower * integral;
    r.constants = {{"lower", c.gd_spectral_lower}};
    r.extras = {{"lambda_star", lam}, {"u_min", um}, {"restricted_integral", integral}};
    return r;
}

// ---- t* and descent machinery ----------------------------------------------

double t_star(double s, double eta, double lambda_star) {
    if (!(eta > 0.0) || !(lambda_star > 0.0)) throw ArgumentError("t_star requires eta, lambda_star > 0");
    if (!(s >= 0.0)) throw ArgumentError("t_star requires s >= 0");
    if (s == 0.0) return 1.0 / (eta * lambda_star);
    const double x = eta * s;
    if (x == 1.0) return 0.0;
    if (x > 1.0) throw ArgumentError("t_star requires eta * s < 1");
    return std::log1p(s / lambda_star) / -std::log1p(-x);
}

double t_star_gap_bound(double u, double eta, double lambda_star) {
    if (!(eta > 0.0) || !(lambda_star > 0.0) || !(u >= 0.0)) throw ArgumentError("gap bound requires positive arguments");
    return (u / lambda_star) * (1.0 + 1.0 / (2.0 * eta * lambda_star));
}

namespace {
struct DescentSums {
    const Spectrum& spec;
    double lam;
    double curvature;  // (eta/2) sum b_i s_i (1 + s_i/lam)^2

    double b_sum(std::int64_t first, std::int64_t last) const {
        return sum_over(spec, first, last, [this](double s) { return lam / (lam + s); });
    }
    double evaluate(double u) const {
        const auto above = spec.index_range(u, kInf);
        const double num = b_sum(above.first, above.second) + curvature;
        if (!(u / 2.0 > lam)) return kInf;
        const auto mid = spec.index_range(lam, u / 2.0);
        const double den = b_sum(mid.first, mid.second);
        if (!(den > 0.0)) return kInf;
        return num / den;
    }
};

DescentSums make_descent(double eta, const Spectrum& spec, double lam) {
    if (!(eta > 0.0) || !(lam > 0.0)) throw ArgumentError("descent threshold requires eta, lambda_star > 0");
    const double curv = 0.5 * eta * sum_over(spec, 0, spec.rank(), [lam](double s) {
                            const double q = 1.0 + s / lam;
                            return lam / (lam + s) * s * q * q;
                        });
    return {spec, lam, curv};
}
}  // namespace

double descent_threshold_A(double u, double eta, const Spectrum& spec, double lambda_star) {
    return make_descent(eta, spec, lambda_star).evaluate(u);
}

double u_min(double eta, const Spectrum& spec, double lambda_star, double rel_tol) {
    const auto ds = make_descent(eta, spec, lambda_star);
    const double level = descent_level();
    double lo = 2.0 * lambda_star;
    double hi = 2.0 * spec.s1();
    if (!(hi > lo)) return kInf;
    if (ds.evaluate(hi) > level) return kInf;
    if (ds.evaluate(lo) <= level) return lo;
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ds.evaluate(mid) <= level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

BoundReport u_min_bound_exp(double rho, double eta, double lambda_star) {
    const double l = descent_level();
    BoundReport r;
    add_check(r, "step_exp", eta <= lambda_star / (8.0 * std::exp(1.0)) * std::exp(rho) / (1.0 + std::exp(rho)) * l);
    r.upper = 2.0 * std::exp(1.0) * lambda_star * (1.0 + 2.0 * std::exp(rho) / l);
    return r;
}

BoundReport u_min_bound_fast_poly(double alpha, double eta, double lambda_star) {
    const double l = descent_level();
    BoundReport r;
    add_check(r, "alpha_fast", alpha > 1.0);
    add_check(r, "lambda_star_small", lambda_star <= std::pow(2.0, -alpha));
    add_check(r, "step_poly", eta <= std::pow(lambda_star, 1.0 - 1.0 / alpha) / (17.0 * std::pow(2.0, alpha)) *
                                         (alpha - 1.0) / (1.0 + alpha) * l);
    r.upper = std::pow(2.0, 1.0 + alpha) * lambda_star *
              std::pow(1.0 + std::pow(2.0, 4.0 + 3.0 * alpha) / l, alpha / (1.0 + alpha));
    return r;
}

// ---- theorems ---------------------------------------------------------------

double j_term(double alpha, double lambda_star, std::int64_t k, double lambda_min) {
    const double third = 1.0 / 3.0;
    if (std::fabs(alpha - third) <= 1e-12)
        return 1.0 + 3.0 * std::log(static_cast<double>(k) * lambda_min / lambda_star);
    if (alpha > third) return 1.0 + std::pow(lambda_star, 3.0 - 1.0 / alpha) / (3.0 * alpha - 1.0);
    return 1.0 + std::pow(static_cast<double>(k) * lambda_min / (lambda_star * lambda_star), 1.0 / alpha - 3.0) /
                     (1.0 - 3.0 * alpha);
}

namespace {
void slow_common_checks(BoundReport& r, double alpha, double lam, double lambda_min, std::int64_t k, double rank,
                        const GridPosition& pos) {
    add_check(r, "k_lambda_min", 2.0 / static_cast<double>(k) < lambda_min && lambda_min <= lam && lam <= 1.0);
    add_check(r, "alpha_slow", alpha > 0.0 && alpha < 1.0);
    add_check(r, "rank", rank >= std::pow(2.0, 1.0 / (1.0 - alpha)) * (1.0 + std::pow(lam, -1.0 / alpha)));
    add_check(r, "grid_index", pos.j >= 0 && pos.j <= k - 2 && pos.eps >= 0.0 && pos.eps <= 1.0);
}

double kappa_of(double lam, double lambda_min, std::int64_t k, double& ell) {
    const double inv = static_cast<double>(k) * lambda_min / lam;
    ell = std::floor(inv);
    return inv - ell;
}
}  // namespace

BoundReport thm_slow_upper(double alpha, double lambda_star, double lambda_min, std::int64_t k, double rank,
                           const BoundConstants& c) {
    if (k < 2) throw ArgumentError("theorem requires k >= 2");
    const auto pos = uniform_grid_position(lambda_star, lambda_min, k);
    BoundReport r;
    slow_common_checks(r, alpha, lambda_star, lambda_min, k, rank, pos);
    const double m = min_frac(pos.eps);
    const double J = j_term(alpha, lambda_star, k, lambda_min);
    const double kk = static_cast<double>(k);
    const double A = kk * kk / std::pow(rank, 1.0 - alpha) * (std::pow(lambda_star, 1.0 - 1.0 / alpha) + J);
    const double tail = std::pow(lambda_star, 4.0) / (lambda_min * lambda_min);
    const double pre = m > 0.0 ? c.slow_upper / (m * m * sq(1.0 - lambda_min)) : kInf;
    r.upper = pre * (A + tail);
    r.constants = {{"upper", c.slow_upper}};
    r.thresholds = {{"r_upper", std::pow(lambda_min * kk / sq(lambda_star), 2.0 / (1.0 - alpha)) *
                                    std::pow(std::pow(lambda_star, 1.0 - 1.0 / alpha) + J, 1.0 / (1.0 - alpha))}};
    r.extras = {{"epsilon", pos.eps}, {"J", J}, {"A", A}};
    return r;
}

BoundReport thm_slow_lower(double alpha, double lambda_star, double lambda_min, std::int64_t k, double rank,
                           const BoundConstants& c) {
    if (k < 2) throw ArgumentError("theorem requires k >= 2");
    const auto pos = uniform_grid_position(lambda_star, lambda_min, k);
    double ell = 0.0;
    const double kappa = kappa_of(lambda_star, lambda_min, k, ell);
    BoundReport r;
    slow_common_checks(r, alpha, lambda_star, lambda_min, k, rank, pos);
    add_check(r, "kappa_open", kappa > 0.0 && kappa < 1.0 && ell <= static_cast<double>(k - 1));
    const double m = min_frac(pos.eps);
    const double mk = min_frac(kappa);
    const double kk = static_cast<double>(k);
    const double ratio = 4.0 * kk * lambda_min / (lambda_star * lambda_star * kappa);
    const double deficit = 1.0 - 2.0 * std::pow(ratio, 1.0 / alpha - 1.0) / ((1.0 - alpha) * std::pow(rank, 1.0 - alpha));
    const double tail = std::pow(lambda_star, 4.0) / (lambda_min * lambda_min);
    const double core = m > 0.0 ? mk * mk / (m * m * sq(1.0 - lambda_min)) * deficit * tail : kInf;
    r.lower = c.slow_lower * core;
    r.constants = {{"lower", c.slow_lower}, {"lower_proof", c.slow_lower_proof}};
    r.thresholds = {{"r_lower", std::pow(4.0 / (1.0 - alpha), 1.0 / (1.0 - alpha)) * std::pow(ratio, 1.0 / alpha)}};
    r.extras = {{"epsilon", pos.eps}, {"kappa", kappa}, {"deficit", deficit}, {"lower_with_proof_constant", c.slow_lower_proof * core}};
    return r;
}

BoundReport thm_fast_lower(FastDecay decay, double rate, double lambda_star, double lambda_min, std::int64_t k,
                           double rank, const BoundConstants& c) {
    if (k < 2) throw ArgumentError("theorem requires k >= 2");
    const double l = descent_level();
    const auto pos = uniform_grid_position(lambda_star, lambda_min, k);
    const double kk = static_cast<double>(k);
    BoundReport r;
    add_check(r, "lambda_range", 0.0 < lambda_min && lambda_min <= lambda_star && lambda_star <= 1.0);
    add_check(r, "grid_index", pos.j >= 0 && pos.j <= k - 2 && pos.eps >= 0.0 && pos.eps <= 1.0);
    double constant;
    const double base = 64.0 * std::log1p(1.0 / lambda_star);
    if (decay == FastDecay::Exponential) {
        const double rho = rate;
        add_check(r, "rho_positive", rho > 0.0);
        add_check(r, "rank", rank >= 1.0 + std::log(1.0 / lambda_star) / rho);
        add_check(r, "lambda_star_small",
                  lambda_star < 0.5 / (2.0 * std::exp(1.0) + 4.0 * std::exp(1.0 + rho) / l));
        add_check(r, "k_large",
                  kk >= std::max(base, 8.0 * std::exp(1.0) / lambda_star * (1.0 + std::exp(-rho)) / l) / lambda_min);
        constant = c.c_rho.value_or(c_rho(rho));
    } else {
        const double alpha = rate;
        add_check(r, "alpha_fast", alpha > 1.0);
        add_check(r, "rank", rank >= std::pow(lambda_star, -1.0 / alpha));
        add_check(r, "lambda_star_small",
                  lambda_star < std::pow(2.0, -(1.0 + 2.0 * alpha)) *
                                    std::pow(1.0 + std::pow(2.0, 4.0 + 3.0 * alpha) / l, -alpha / (alpha + 1.0)));
        add_check(r, "k_large",
                  kk >= std::max(base, 17.0 * std::pow(2.0, alpha) / std::pow(lambda_star, 1.0 - 1.0 / alpha) *
                                           (alpha + 1.0) / (alpha - 1.0) / l) /
                            lambda_min);
        constant = c.c_alpha.value_or(c_alpha(alpha));
    }
    const double m = min_frac(pos.eps);
    r.lower = m > 0.0 ? constant / (m * m) * sq(lambda_star * kk / (1.0 - lambda_min)) : kInf;
    r.constants = {{"lower", constant}};
    r.extras = {{"epsilon", pos.eps}};
    return r;
}

BoundReport thm_loggrid_ratio(double alpha, double sigma, double sigma_min, std::int64_t n, std::int64_t d,
                              std::int64_t k, double rank, const BoundConstants& c) {
    if (k < 3) throw ArgumentError("theorem requires k >= 3");
    if (!(sigma > 0.0) || !(sigma_min > 0.0) || n < 1 || d < 1) throw ArgumentError("theorem requires positive sigma, sigma_min, n, d");
    const double ratio_dn = static_cast<double>(d) / static_cast<double>(n);
    const double lam = ratio_dn * sigma * sigma;
    const double lambda_min = ratio_dn * sigma_min * sigma_min;
    const double kk = static_cast<double>(k);
    double ell = 0.0;
    const double kappa = kappa_of(lam, lambda_min, k, ell);
    const auto pos = log_grid_position(lam, lambda_min, k);
    BoundReport r;
    add_check(r, "sigma_min", sigma_min < sigma / std::sqrt(2.0));
    add_check(r, "lambda_range", lambda_min < 1.0 && lam <= 1.0);
    add_check(r, "alpha_slow", alpha > 0.0 && alpha < 1.0);
    add_check(r, "k_large", kk >= 3.0 / lambda_min);
    add_check(r, "kappa_nonint", kappa > 0.0 && kappa < 1.0);
    add_check(r, "log_index", pos.j > 2 && pos.j < k);
    add_check(r, "k_log", kk >= 1.0 + 3.0 * std::log(1.0 / lambda_min));
    const double J = j_term(alpha, lam, k, lambda_min);
    const double r_bar = std::pow(lambda_min * lambda_min * kk * kk / (lam * lam) *
                                      (std::pow(lam, 1.0 - 1.0 / alpha) + J / (lam * lam)),
                                  1.0 / (1.0 - alpha));
    const double ratio = 4.0 * kk * lambda_min / (lam * lam * kappa);
    const double r_under = std::max(std::pow(2.0, 1.0 / (1.0 - alpha)) * (1.0 + std::pow(lam, -1.0 / alpha)),
                                    std::pow(4.0 / (1.0 - alpha), 1.0 / (1.0 - alpha)) * std::pow(ratio, 1.0 / alpha));
    add_check(r, "rank", rank >= std::max(r_bar, r_under));
    const double lg = std::log(1.0 / lambda_min);
    const double dist = min_frac(pos.eps);
    const double base = lam * lam / (lambda_min * lambda_min) / (lg * lg);
    r.upper = dist > 0.0 ? c.loggrid_upper / (dist * dist) * base : kInf;
    const double mk = min_frac(kappa);
    r.lower = c.loggrid_lower * mk * mk * base *
              (1.0 - 2.0 / (1.0 - alpha) * std::pow(ratio, 1.0 / alpha - 1.0) / std::pow(rank, 1.0 - alpha));
    r.constants = {{"lower", c.loggrid_lower}, {"upper", c.loggrid_upper}};
    r.thresholds = {{"r_bar", r_bar}, {"r_under", r_under}};
    r.extras = {{"lambda_star", lam}, {"lambda_min", lambda_min}, {"epsilon", pos.eps}, {"kappa", kappa}, {"dist", dist}};
    return r;
}

double risk_inflation(GridKind kind, std::int64_t k, double lambda_star, double lambda_min) {
    const double kk = static_cast<double>(k);
    switch (kind) {
        case GridKind::FineUniform: return 2.0 / (kk * kk * lambda_star * lambda_star);
        case GridKind::CoarseUniform: return 1.0 / (kk * lambda_star);
        case GridKind::Log: {
            if (!(lambda_min > 0.0 && lambda_min < 1.0) || k < 2) throw ArgumentError("log grid inflation requires lambda_min in (0,1), k >= 2");
            const double lg = std::log(1.0 / lambda_min);
            return lg * lg / (4.0 * (kk - 1.0) * (kk - 1.0));
        }
    }
    return 0.0;
}

}  // namespace specshrink
