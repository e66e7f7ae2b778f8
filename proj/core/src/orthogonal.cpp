#include "specshrink/orthogonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <spdlog/spdlog.h>

#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"
#include "specshrink/summation.hpp"

namespace specshrink {

namespace {

constexpr double kPerturb = 0x1p-40;

std::vector<double> member_m_values(const EstimatorClass& cls, double s) {
    std::vector<double> m;
    m.reserve(cls.size());
    for (const auto& sh : cls.members) m.push_back(m_factor(sh, s));
    std::sort(m.begin(), m.end());
    return m;
}

// Best member excess at Bayes factor y, given sorted M values.
double best_excess(const std::vector<double>& m, double y, double s) {
    const auto it = std::lower_bound(m.begin(), m.end(), y);
    double best = std::numeric_limits<double>::infinity();
    if (it != m.end()) best = std::min(best, (*it - y) * (*it - y));
    if (it != m.begin()) best = std::min(best, (*(it - 1) - y) * (*(it - 1) - y));
    return best / (s * y);
}

double kp1_gap(double lo, double hi) { return (hi - lo) / std::sqrt(2.0 * (hi + lo)); }

template <class F>
double bisect(F&& f, double lo, double hi) {
    // f increasing, root in [lo, hi]
    for (int i = 0; i < 200 && hi > lo; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double OrthogonalSetting::x_minus() const { return std::sqrt(1.0 + s * psi_minus); }
double OrthogonalSetting::x_plus() const { return std::sqrt(1.0 + s * psi_plus); }

void OrthogonalSetting::validate() const {
    if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError("orthogonal setting requires s > 0");
    if (!(psi_minus >= 0.0) || !(psi_plus >= psi_minus) || !std::isfinite(psi_plus))
        throw ArgumentError("orthogonal setting requires 0 <= psi_minus <= psi_plus");
    if (k < 1) throw ArgumentError("orthogonal setting requires k >= 1");
}

double orthogonal_excess(double m, double s, double psi) {
    const double x = std::sqrt(1.0 + s * psi);
    const double v = x * m - 1.0 / x;
    return v * v / s;
}

double minimax_risk(const OrthogonalSetting& set) {
    set.validate();
    const double diff = 1.0 / set.x_minus() - 1.0 / set.x_plus();
    const double kk = static_cast<double>(set.k);
    return diff * diff / (kk * kk * set.s);
}

std::vector<double> kp1_terms(const std::vector<double>& phi, const OrthogonalSetting& set) {
    set.validate();
    if (phi.empty()) throw ArgumentError("grid must not be empty");
    const double xp = set.x_plus();
    const double xm = set.x_minus();
    std::vector<double> t;
    t.reserve(phi.size() + 1);
    t.push_back(xp * phi.front() - 1.0 / xp);
    for (std::size_t j = 0; j + 1 < phi.size(); ++j) t.push_back(kp1_gap(phi[j], phi[j + 1]));
    t.push_back(1.0 / xm - xm * phi.back());
    return t;
}

MaxMin maxmin_oracle(const EstimatorClass& cls, const OrthogonalSetting& set, std::int64_t psi_points, bool log_spacing) {
    set.validate();
    if (psi_points < 2) throw ArgumentError("psi_points must be >= 2");
    if (cls.members.empty()) throw ArgumentError("class must not be empty");
    const auto m = member_m_values(cls, set.s);
    const double lo = set.psi_minus;
    const double hi = set.psi_plus;
    if (log_spacing && !(lo > 0.0)) throw ArgumentError("log spacing requires psi_minus > 0");
    const auto psi_at = [&](std::int64_t i) {
        if (i == psi_points - 1) return hi;
        const double f = static_cast<double>(i) / static_cast<double>(psi_points - 1);
        return log_spacing ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
    };
    const std::int64_t blocks = (psi_points + static_cast<std::int64_t>(kSumBlock) - 1) / static_cast<std::int64_t>(kSumBlock);
    std::vector<MaxMin> best(static_cast<std::size_t>(blocks), MaxMin{-1.0, lo});
    parallel_for(blocks, [&](std::int64_t b) {
        MaxMin local{-1.0, lo};
        const std::int64_t end = std::min<std::int64_t>(psi_points, (b + 1) * static_cast<std::int64_t>(kSumBlock));
        for (std::int64_t i = b * static_cast<std::int64_t>(kSumBlock); i < end; ++i) {
            const double psi = psi_at(i);
            const double v = best_excess(m, 1.0 / (1.0 + set.s * psi), set.s);
            if (v > local.value) local = {v, psi};
        }
        best[static_cast<std::size_t>(b)] = local;
    });
    MaxMin out = best.front();
    for (const auto& b : best)
        if (b.value > out.value) out = b;
    return out;
}

MaxMin class_maxmin_exact(const EstimatorClass& cls, const OrthogonalSetting& set) {
    set.validate();
    if (cls.members.empty()) throw ArgumentError("class must not be empty");
    const auto m = member_m_values(cls, set.s);
    const double y_lo = 1.0 / (1.0 + set.s * set.psi_plus);
    const double y_hi = 1.0 / (1.0 + set.s * set.psi_minus);
    const auto psi_of = [&](double y) { return (1.0 / y - 1.0) / set.s; };
    MaxMin out{best_excess(m, y_lo, set.s), set.psi_plus};
    const double v_hi = best_excess(m, y_hi, set.s);
    if (v_hi > out.value) out = {v_hi, set.psi_minus};
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        const double mid = 0.5 * (m[i] + m[i + 1]);
        if (mid > y_lo && mid < y_hi) {
            const double half = 0.5 * (m[i + 1] - m[i]);
            const double v = half * half / (set.s * mid);
            if (v > out.value) out = {v, psi_of(mid)};
        }
    }
    return out;
}

double ridge_q_star(double j, double tau, double a) {
    const double g = a / (j + tau);
    return g / std::sqrt(1.0 + g) * std::min(tau / (j + a), (1.0 - tau) / (j + 1.0 + a));
}

double ridge_maxmin(const OrthogonalSetting& set) {
    set.validate();
    const double kk = static_cast<double>(set.k);
    if (!(set.psi_minus > kk / (kk + 1.0)))
        throw PreconditionError("psi_minus_large", "ridge max-min requires psi_minus > k/(k+1)");
    const double q = kk / set.psi_plus;
    const double jf = std::floor(q);
    if (!(jf + 1.0 <= kk / set.psi_minus))
        throw PreconditionError("psi_gap", "ridge max-min requires floor(k/psi_plus) + 1 <= k/psi_minus");
    const double a = kk * set.s;
    double frac_q = q - jf;
    if (frac_q == 0.0) {
        spdlog::warn("fractional part of k/psi_plus is zero; perturbing by 2^-40");
        frac_q = kPerturb;
    }
    double phi = kk / set.psi_minus - (jf + 1.0);
    if (phi == 0.0) {
        spdlog::warn("fractional quantity k/psi_minus - floor(k/psi_plus) - 1 is zero; perturbing by 2^-40");
        phi = kPerturb;
    }
    const double tau1 = std::max(frac_q, (jf + a) / (2.0 * (jf + a) + 1.0));
    const double tau2 = std::min(phi, (jf + 1.0 + a) / (2.0 * (jf + 1.0 + a) + 1.0));
    const double q1 = ridge_q_star(jf, tau1, a);
    const double q2 = ridge_q_star(jf + 1.0, tau2, a);
    return std::max(q1 * q1, q2 * q2) / set.s;
}

double gd_tau_star(double b) { return std::log(2.0 / (b + 1.0)) / std::log(1.0 / b); }

double gd_q_star(double tau, double b) {
    return std::min(-std::expm1(tau * std::log(b)), b * std::expm1((tau - 1.0) * std::log(b)));
}

namespace {
struct GDSetup {
    double b;
    double log_inv_b;
    double v_minus;
    double v_plus;
};

GDSetup gd_setup(const OrthogonalSetting& set, double eta) {
    set.validate();
    if (!(eta > 0.0 && eta * set.s < 1.0)) throw PreconditionError("step", "gd max-min requires 0 < eta < 1/s");
    const double b = 1.0 - eta * set.s;
    const double log_inv_b = -std::log1p(-eta * set.s);
    const double kk = static_cast<double>(set.k);
    if (!(kk * log_inv_b > std::log1p(set.s * set.psi_plus)))
        throw PreconditionError("horizon", "gd max-min requires (1 - eta s)^k < 1/(1 + s psi_plus)");
    return {b, log_inv_b, std::log1p(set.s * set.psi_minus) / log_inv_b, std::log1p(set.s * set.psi_plus) / log_inv_b};
}
}  // namespace

double gd_maxmin(const OrthogonalSetting& set, double eta) {
    const auto g = gd_setup(set, eta);
    const double s = set.s;
    // excess at continuous position v where y = b^v, against iterate t: (1/s) b^{-v} (b^t - b^v)^2
    const auto at = [&](double v, double t) {
        const double bt = std::exp(-t * g.log_inv_b);
        const double bv = std::exp(-v * g.log_inv_b);
        return (bt - bv) * (bt - bv) / (s * bv);
    };
    const double kk = static_cast<double>(set.k);
    const auto best_at = [&](double v) {
        const double lo = std::clamp(std::floor(v), 1.0, kk);
        const double hi = std::clamp(std::ceil(v), 1.0, kk);
        return std::min(at(v, lo), at(v, hi));
    };
    double out = std::max(best_at(g.v_minus), best_at(g.v_plus));
    const double ts = gd_tau_star(g.b);
    // crossing points t + tau*, t = 1..k-1; their value decreases in t, so the first one in range dominates
    const double t0 = std::max(1.0, std::ceil(g.v_minus - ts));
    if (t0 <= kk - 1.0 && t0 + ts <= g.v_plus) out = std::max(out, best_at(t0 + ts));
    return out;
}

double gd_maxmin_stated(const OrthogonalSetting& set, double eta) {
    const auto g = gd_setup(set, eta);
    const double j = std::floor(g.v_minus);
    double tau_minus = g.v_minus - j;
    if (tau_minus == 0.0) {
        spdlog::warn("log_(1/b)(1 + s psi_minus) is an integer; perturbing its fractional part by 2^-40");
        tau_minus = kPerturb;
    }
    const double ts = gd_tau_star(g.b);
    const double q_hi = gd_q_star(std::max(tau_minus, ts), g.b);
    const double q_lo = gd_q_star(std::min(tau_minus, ts), g.b);
    return std::exp(-(j - ts) * g.log_inv_b) * std::max(q_hi * q_hi, g.b * q_lo * q_lo);
}

DescentResult kp1_descent_oracle(const OrthogonalSetting& set, double tol, std::int64_t max_sweeps) {
    set.validate();
    if (set.k > 64) throw ArgumentError("descent oracle supports k <= 64");
    const auto k = static_cast<std::size_t>(set.k);
    const double xp = set.x_plus();
    const double xm = set.x_minus();
    const double lo = 1.0 / (xp * xp);
    const double hi = 1.0 / (xm * xm);
    DescentResult r;
    r.grid.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        r.grid[j] = lo + (hi - lo) * (static_cast<double>(j) + 0.5) / static_cast<double>(k);
    if (hi == lo) {
        std::fill(r.grid.begin(), r.grid.end(), lo);
        r.value = 0.0;
        return r;
    }
    const double omega = 2.0 / (1.0 + std::sin(std::numbers::pi / static_cast<double>(k + 1)));
    auto& phi = r.grid;
    const auto solve = [&](std::size_t j) {
        const double left_bound = j == 0 ? lo : phi[j - 1];
        const double right_bound = j + 1 == k ? hi : phi[j + 1];
        const auto left = [&](double x) { return j == 0 ? xp * x - 1.0 / xp : kp1_gap(phi[j - 1], x); };
        const auto right = [&](double x) { return j + 1 == k ? 1.0 / xm - xm * x : kp1_gap(x, phi[j + 1]); };
        return bisect([&](double x) { return left(x) - right(x); }, left_bound, right_bound);
    };
    const auto residual = [&] {
        const auto t = kp1_terms(phi, set);
        const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
        double mean = 0.0;
        for (double v : t) mean += v;
        mean /= static_cast<double>(t.size());
        r.value = *mx;
        return (*mx - *mn) / mean;
    };
    for (r.sweeps = 0; r.sweeps < max_sweeps; ++r.sweeps) {
        if ((r.residual = residual()) <= tol) break;
        for (std::size_t j = 0; j < k; ++j) {
            const double left_bound = j == 0 ? lo : phi[j - 1];
            const double right_bound = j + 1 == k ? hi : phi[j + 1];
            const double target = solve(j);
            phi[j] = std::clamp(phi[j] + omega * (target - phi[j]), left_bound, right_bound);
        }
    }
    r.residual = residual();
    return r;
}

}  // namespace specshrink
