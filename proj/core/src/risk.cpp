#include "specshrink/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"

namespace specshrink {

namespace {

double checked_lambda_star(const ProblemParams& p) {
    p.validate();
    if (!(p.sigma > 0.0)) throw ArgumentError("excess risk requires sigma > 0");
    return p.lambda_star();
}

// (1 + lambda*/s) (s/(lambda*+s) - u)^2 for one eigenvalue; overflowed iterates count as +inf.
inline double excess_term(double s, double lam, double u) {
    if (!std::isfinite(u)) return std::numeric_limits<double>::infinity();
    const double diff = s / (lam + s) - u;
    return (1.0 + lam / s) * diff * diff;
}

std::size_t argmin_first(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[best]) best = i;
    return best;
}

std::vector<double> scan_gd_recursive(double eta, std::int64_t k, const Spectrum& spec, double lam) {
    const auto r = static_cast<std::size_t>(spec.rank());
    const auto width = static_cast<std::size_t>(k);
    return deterministic_sums(r, width, [&](std::size_t begin, std::size_t end, CompensatedSum* acc) {
        for (std::size_t i = begin; i < end; ++i) {
            const double s = spec.value(static_cast<std::int64_t>(i));
            const double x = eta * s;
            double u = 0.0;
            for (std::size_t t = 0; t < width; ++t) {
                u += x * (1.0 - u);
                acc[t].add(excess_term(s, lam, u));
            }
        }
    });
}

std::vector<double> scan_schedule_recursive(const std::vector<double>& etas, const Spectrum& spec, double lam) {
    const auto r = static_cast<std::size_t>(spec.rank());
    const std::size_t width = etas.size();
    return deterministic_sums(r, width, [&](std::size_t begin, std::size_t end, CompensatedSum* acc) {
        for (std::size_t i = begin; i < end; ++i) {
            const double s = spec.value(static_cast<std::int64_t>(i));
            double u = 0.0;
            for (std::size_t t = 0; t < width; ++t) {
                u += etas[t] * s * (1.0 - u);
                acc[t].add(excess_term(s, lam, u));
            }
        }
    });
}

std::vector<double> scan_ridge(const std::vector<double>& lambdas, const Spectrum& spec, double lam) {
    const auto r = static_cast<std::size_t>(spec.rank());
    return deterministic_sums(r, lambdas.size(), [&](std::size_t begin, std::size_t end, CompensatedSum* acc) {
        for (std::size_t i = begin; i < end; ++i) {
            const double s = spec.value(static_cast<std::int64_t>(i));
            for (std::size_t j = 0; j < lambdas.size(); ++j) acc[j].add(excess_term(s, lam, s / (lambdas[j] + s)));
        }
    });
}

std::vector<double> scan_generic(const std::vector<Shrinker>& members, const Spectrum& spec, double lam) {
    const auto r = static_cast<std::size_t>(spec.rank());
    return deterministic_sums(r, members.size(), [&](std::size_t begin, std::size_t end, CompensatedSum* acc) {
        for (std::size_t i = begin; i < end; ++i) {
            const double s = spec.value(static_cast<std::int64_t>(i));
            for (std::size_t j = 0; j < members.size(); ++j) acc[j].add(excess_term(s, lam, one_minus_m(members[j], s)));
        }
    });
}

void check_finite(const std::vector<double>& sums) {
    for (std::size_t j = 0; j < sums.size(); ++j)
        if (std::isnan(sums[j]))
            throw EvaluationError("non-finite excess risk for class member " + std::to_string(j), static_cast<long long>(j));
}

}  // namespace

double bayes_risk(const Spectrum& spec, const ProblemParams& p) {
    const double lam = checked_lambda_star(p);
    const double range = integrate(spec, [lam](double s) { return lam / (s + lam); });
    return p.psi * (range + spec.zero_mass());
}

RiskBreakdown excess_risk(const Shrinker& sh, const Spectrum& spec, const ProblemParams& p) {
    const double lam = checked_lambda_star(p);
    validate(sh);
    RiskBreakdown out;
    out.bayes = bayes_risk(spec, p);
    out.excess = p.psi * integrate(spec, [&](double s) { return excess_term(s, lam, one_minus_m(sh, s)); });
    out.total = out.bayes + out.excess;
    return out;
}

ClassRiskReport class_excess(const EstimatorClass& cls, const Spectrum& spec, const ProblemParams& p,
                             const ScanOptions& opts) {
    if (cls.members.empty()) throw ArgumentError("class_excess requires a non-empty class");
    const double lam = checked_lambda_star(p);
    const double inv_d = 1.0 / static_cast<double>(spec.dim());
    const double work = static_cast<double>(cls.size()) * static_cast<double>(spec.rank());
    ClassRiskReport out;
    std::vector<double> sums;

    if (const auto* g = std::get_if<GDClassMeta>(&cls.meta); g && work <= opts.recursion_budget) {
        sums = scan_gd_recursive(g->eta, g->k, spec, lam);
    } else if (const auto* sc = std::get_if<GDScheduleMeta>(&cls.meta); sc && work <= opts.recursion_budget) {
        sums = scan_schedule_recursive(sc->etas, spec, lam);
    } else {
        bool all_ridge = true;
        for (const auto& m : cls.members) all_ridge = all_ridge && std::holds_alternative<Ridge>(m);
        if (all_ridge) {
            const auto lambdas = ridge_lambdas(cls);
            if (opts.ridge_bracketing) {
                // The excess is unimodal in lambda with its minimum at lambda*, so
                // only the grid values adjacent to lambda* can be optimal.
                std::size_t below = lambdas.size(), above = lambdas.size();
                for (std::size_t j = 0; j < lambdas.size(); ++j) {
                    if (lambdas[j] <= lam && (below == lambdas.size() || lambdas[j] > lambdas[below])) below = j;
                    if (lambdas[j] >= lam && (above == lambdas.size() || lambdas[j] < lambdas[above])) above = j;
                }
                std::vector<double> cand_l;
                std::vector<std::size_t> cand_i;
                for (std::size_t j : {below, above})
                    if (j < lambdas.size() && std::find(cand_i.begin(), cand_i.end(), j) == cand_i.end()) {
                        cand_i.push_back(j);
                        cand_l.push_back(lambdas[j]);
                    }
                const auto partial = scan_ridge(cand_l, spec, lam);
                check_finite(partial);
                sums.assign(lambdas.size(), std::numeric_limits<double>::infinity());
                for (std::size_t c = 0; c < cand_i.size(); ++c) sums[cand_i[c]] = partial[c];
                out.per_member_excess.resize(sums.size());
                for (std::size_t j = 0; j < sums.size(); ++j)
                    out.per_member_excess[j] = std::isinf(sums[j]) ? sums[j] : p.psi * sums[j] * inv_d;
                out.best_index = argmin_first(out.per_member_excess);
                out.best_excess = out.per_member_excess[out.best_index];
                return out;
            }
            sums = scan_ridge(lambdas, spec, lam);
        } else {
            sums = scan_generic(cls.members, spec, lam);
        }
    }
    check_finite(sums);
    out.per_member_excess.resize(sums.size());
    for (std::size_t j = 0; j < sums.size(); ++j) out.per_member_excess[j] = p.psi * sums[j] * inv_d;
    out.best_index = argmin_first(out.per_member_excess);
    out.best_excess = out.per_member_excess[out.best_index];
    return out;
}

double relative_suboptimality(const EstimatorClass& c1, const EstimatorClass& c2, const Spectrum& spec,
                              const ProblemParams& p, const ScanOptions& opts) {
    const auto den = class_excess(c2, spec, p, opts);
    if (!(den.best_excess > 1e-300))
        throw PreconditionError("degenerate_denominator", "best excess of the reference class is zero");
    const auto num = class_excess(c1, spec, p, opts);
    return num.best_excess / den.best_excess;
}

double dist_scaled(double a, const std::vector<double>& grid, double c) {
    if (!(c > 0.0)) throw ArgumentError("dist_scaled requires c > 0");
    if (grid.empty()) throw ArgumentError("dist_scaled requires a non-empty grid");
    double best = std::numeric_limits<double>::infinity();
    for (double b : grid) best = std::min(best, std::fabs(a - b));
    return best / c;
}

}  // namespace specshrink
