#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "specshrink/specshrink.hpp"

namespace cli {

using namespace specshrink;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_space(double lo, double hi, std::int64_t points) {
    std::vector<double> out;
    for (std::int64_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back(std::exp(std::log(lo) + f * std::log(hi / lo)));
    }
    return out;
}

std::vector<std::int64_t> log_space_int(double lo, double hi, std::int64_t points) {
    std::vector<std::int64_t> out;
    for (double v : log_space(lo, hi, points)) {
        const auto k = static_cast<std::int64_t>(std::llround(v));
        if (out.empty() || out.back() != k) out.push_back(k);
    }
    return out;
}

std::int64_t positive(const Reader& r, std::string_view key, std::int64_t fallback) {
    const auto v = r.integer(key, fallback);
    if (v < 1) throw SchemaError(r.path() + "." + std::string(key), "expected positive integer");
    return v;
}

Spectrum read_spectrum(const Reader& r) {
    const auto kind = r.text("kind");
    if (kind == "power_law") {
        r.only({"kind", "alpha", "r", "d"});
        const auto rank = r.integer("r");
        return Spectrum::power_law(r.number("alpha"), rank, r.integer("d", rank));
    }
    if (kind == "exp_decay") {
        r.only({"kind", "rho", "r", "d"});
        const auto rank = r.integer("r");
        return Spectrum::exp_decay(r.number("rho"), rank, r.integer("d", rank));
    }
    if (kind == "orthogonal") {
        r.only({"kind", "s", "r", "d"});
        const auto rank = r.integer("r");
        return Spectrum::orthogonal(r.number("s"), rank, r.integer("d", rank));
    }
    if (kind == "explicit") {
        r.only({"kind", "values", "path", "d"});
        std::vector<double> values;
        if (r.has("values") == r.has("path"))
            throw SchemaError(r.path(), "explicit spectrum needs exactly one of 'values' or 'path'");
        if (r.has("values")) {
            values = r.numbers("values");
        } else {
            const auto path = r.text("path");
            std::ifstream is(path);
            if (!is) throw SchemaError(r.path() + ".path", "cannot read " + path);
            for (double v; is >> v;) values.push_back(v);
            if (!is.eof()) throw SchemaError(r.path() + ".path", "non-numeric entry in " + path);
        }
        const auto d = r.integer("d", static_cast<std::int64_t>(values.size()));
        return Spectrum::explicit_values(std::move(values), d);
    }
    throw SchemaError(r.path() + ".kind", "unknown spectrum kind '" + kind + "'");
}

ProblemParams read_problem(const Reader& r, const Spectrum& spec) {
    r.only({"n", "d", "sigma", "lambda_star", "psi"});
    ProblemParams p;
    p.d = r.integer("d", spec.dim());
    p.n = r.integer("n", p.d);
    p.psi = r.number("psi", 1.0);
    if (r.has("sigma") == r.has("lambda_star"))
        throw SchemaError(r.path(), "problem needs exactly one of 'sigma' or 'lambda_star'");
    if (r.has("sigma")) {
        p.sigma = r.number("sigma");
    } else {
        const double lam = r.number("lambda_star");
        if (!(lam > 0.0)) throw SchemaError(r.path() + ".lambda_star", "expected positive number");
        p.sigma = std::sqrt(lam * p.psi * static_cast<double>(p.n) / static_cast<double>(p.d));
    }
    p.validate();
    return p;
}

ProblemParams with_lambda_star(ProblemParams p, double lam) {
    p.sigma = std::sqrt(lam * p.psi * static_cast<double>(p.n) / static_cast<double>(p.d));
    return p;
}

Shrinker read_shrinker(const Reader& r) {
    const auto type = r.text("type");
    if (type == "ridge") {
        r.only({"type", "lambda"});
        return Ridge{r.number("lambda")};
    }
    if (type == "gd") {
        r.only({"type", "eta", "t"});
        return GDConstant{r.number("eta"), r.integer("t")};
    }
    if (type == "schedule") {
        r.only({"type", "etas"});
        return GDSchedule{r.numbers("etas")};
    }
    if (type == "constant_phi") {
        r.only({"type", "phi"});
        return ConstantPhi{r.number("phi")};
    }
    throw SchemaError(r.path() + ".type", "unknown shrinker type '" + type + "'");
}

EstimatorClass read_class(const Reader& r) {
    const auto type = r.text("type");
    if (type == "gd") {
        r.only({"type", "eta", "k", "lambda_min"});
        const auto k = r.integer("k");
        if (r.has("eta") == r.has("lambda_min"))
            throw SchemaError(r.path(), "gd class needs exactly one of 'eta' or 'lambda_min' (eta = 1/(k lambda_min))");
        return gd_class(r.has("eta") ? r.number("eta") : default_gd_step(k, r.number("lambda_min")), k);
    }
    if (type == "ridge_uniform") {
        r.only({"type", "lambda_min", "k"});
        return ridge_uniform(r.number("lambda_min"), r.integer("k"));
    }
    if (type == "ridge_log") {
        r.only({"type", "lambda_min", "k"});
        return ridge_log(r.number("lambda_min"), r.integer("k"));
    }
    if (type == "minimax") {
        r.only({"type", "psi_minus", "psi_plus", "s", "k"});
        return minimax_class(r.number("psi_minus"), r.number("psi_plus"), r.number("s"), r.integer("k"));
    }
    if (type == "custom") {
        r.only({"type", "members"});
        std::vector<Shrinker> members;
        for (const auto& m : r.children("members")) members.push_back(read_shrinker(m));
        return custom_class(std::move(members));
    }
    throw SchemaError(r.path() + ".type", "unknown class type '" + type + "'");
}

bool is_ridge_grid(const EstimatorClass& c) {
    return std::holds_alternative<RidgeUniformMeta>(c.meta) || std::holds_alternative<RidgeLogMeta>(c.meta);
}

void require_off_grid(const EstimatorClass& c, double lam) {
    if (!is_ridge_grid(c)) return;
    for (double g : ridge_lambdas(c))
        if (std::fabs(g - lam) <= 1e-12 * lam)
            throw PreconditionError("grid_degeneracy", "lambda_star lies on the ridge grid");
}

std::string failed_names(const BoundReport& b) {
    std::string out;
    for (const auto& c : b.preconditions)
        if (!c.ok) out += (out.empty() ? "" : ";") + c.name;
    return out;
}

Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{kNaN}; }

// ---- commands ----------------------------------------------------------------

std::vector<Table> cmd_risk(const Reader& r) {
    r.only({"spectrum", "problem", "shrinkers"});
    const auto spec = read_spectrum(r.child("spectrum"));
    const auto p = read_problem(r.child("problem"), spec);
    Table t;
    t.columns = {"shrinker", "kind", "lambda_star", "total", "bayes", "excess", "step_flagged"};
    for (const auto& s : r.children("shrinkers")) {
        const auto sh = read_shrinker(s);
        const auto rb = excess_risk(sh, spec, p);
        t.add({describe(sh), std::string(kind_name(sh)), p.lambda_star(), rb.total, rb.bayes, rb.excess,
               step_flagged(sh, spec.s1())});
    }
    return {t};
}

std::vector<Table> cmd_compare(const Reader& r) {
    r.only({"spectrum", "problem", "class_a", "class_b", "lambda_stars"});
    const auto spec = read_spectrum(r.child("spectrum"));
    const auto base = read_problem(r.child("problem"), spec);
    const auto a = read_class(r.child("class_a"));
    const auto b = read_class(r.child("class_b"));
    const auto lams = r.has("lambda_stars") ? r.numbers("lambda_stars") : std::vector<double>{base.lambda_star()};
    Table t;
    t.columns = {"lambda_star", "class_a", "class_b", "best_a_index", "best_a_excess", "best_b_index", "best_b_excess",
                 "ratio"};
    for (double lam : lams) {
        const auto p = r.has("lambda_stars") ? with_lambda_star(base, lam) : base;
        require_off_grid(b, p.lambda_star());
        const auto ra = class_excess(a, spec, p), rb = class_excess(b, spec, p);
        if (!(rb.best_excess > 1e-300))
            throw PreconditionError("degenerate_denominator", "class_b attains zero excess risk");
        t.add({p.lambda_star(), std::string(a.kind()), std::string(b.kind()), static_cast<std::int64_t>(ra.best_index),
               ra.best_excess, static_cast<std::int64_t>(rb.best_index), rb.best_excess, ra.best_excess / rb.best_excess});
    }
    t.plots.push_back({"relative sub-optimality", "lambda_star", {{"ratio", "ratio"}}, true, true});
    return {t};
}

std::vector<Table> cmd_bounds(const Reader& r) {
    r.only({"spectrum", "proposition", "lambda_stars", "psi", "n", "d", "lambda_min", "k", "eta", "t", "constants"});
    const auto spec = read_spectrum(r.child("spectrum"));
    const auto prop = r.text("proposition");
    const auto consts = r.text("constants", "stated");
    if (consts != "stated" && consts != "unit") throw SchemaError(r.path() + ".constants", "expected \"stated\" or \"unit\"");
    const BoundConstants c = consts == "unit" ? BoundConstants::unit() : BoundConstants{};
    ProblemParams base;
    base.d = r.integer("d", spec.dim());
    base.n = r.integer("n", base.d);
    base.psi = r.number("psi", 1.0);
    Table t;
    t.columns = {"proposition", "lambda_star", "exact", "lower", "upper", "preconditions_met", "lower_valid",
                 "upper_valid", "failed_preconditions"};
    for (double lam : r.numbers("lambda_stars")) {
        if (!(lam > 0.0)) throw SchemaError(r.path() + ".lambda_stars", "expected positive values");
        const auto p = with_lambda_star(base, lam);
        BoundReport b;
        double exact;
        if (prop == "ridge_fine") {
            const double lm = r.number("lambda_min");
            const auto k = r.integer("k");
            b = sandwich_ridge_fine(spec, p, lm, k, c);
            exact = class_excess(ridge_uniform(lm, k), spec, p).best_excess;
        } else if (prop == "ridge_coarse") {
            const auto k = r.integer("k");
            b = sandwich_ridge_coarse(spec, p, k, c);
            exact = class_excess(ridge_uniform(0.0, k), spec, p).best_excess;
        } else if (prop == "ridge_log") {
            const double lm = r.number("lambda_min");
            const auto k = r.integer("k");
            b = sandwich_ridge_log(spec, p, lm, k, c);
            exact = class_excess(ridge_log(lm, k), spec, p).best_excess;
        } else if (prop == "gd_fine" || prop == "gd_coarse" || prop == "gd_lower2") {
            const double eta = r.number("eta");
            const auto steps = r.integer("t");
            b = prop == "gd_fine"     ? sandwich_gd_fine(spec, p, eta, steps, c)
                : prop == "gd_coarse" ? sandwich_gd_coarse(spec, p, eta, steps, c)
                                      : gd_spectral_lower(spec, p, eta, steps, c);
            exact = class_excess(gd_class(eta, steps), spec, p).best_excess;
        } else {
            throw SchemaError(r.path() + ".proposition", "unknown proposition '" + prop + "'");
        }
        t.add({prop, lam, exact, opt(b.lower), opt(b.upper), b.preconditions_met(), b.lower_valid(), b.upper_valid(),
               failed_names(b)});
    }
    t.plots.push_back({prop, "lambda_star", {{"exact", "exact"}, {"lower", "lower"}, {"upper", "upper"}}, true, true});
    return {t};
}

struct OrthoRow {
    double theory;
    double oracle;
};

OrthoRow ortho_class(const std::string& kind, const OrthogonalSetting& set, double eta_scale, std::int64_t points) {
    const auto k = set.k;
    if (kind == "minimax")
        return {minimax_risk(set), maxmin_oracle(minimax_class(set.psi_minus, set.psi_plus, set.s, k), set, points).value};
    if (kind == "ridge")
        return {ridge_maxmin(set), maxmin_oracle(ridge_uniform(1.0 / static_cast<double>(k), k), set, points).value};
    const double eta = eta_scale / (static_cast<double>(k) * set.s);
    return {gd_maxmin(set, eta), maxmin_oracle(gd_class(eta, k), set, points).value};
}

std::vector<Table> cmd_minimax(const Reader& r) {
    r.only({"s", "psi_minus", "psi_plus", "ks", "eta_scale", "psi_points", "classes"});
    const double s = r.number("s", 1.0), pm = r.number("psi_minus"), pp = r.number("psi_plus");
    const double eta_scale = r.number("eta_scale", 8.0);
    const auto points = positive(r, "psi_points", 100'000);
    const auto classes = r.has("classes") ? r.texts("classes") : std::vector<std::string>{"minimax", "ridge", "gd"};
    for (const auto& c : classes)
        if (c != "minimax" && c != "ridge" && c != "gd") throw SchemaError(r.path() + ".classes", "unknown class '" + c + "'");
    Table t;
    t.columns = {"k", "class", "theory", "oracle", "relative_gap"};
    for (double kd : r.numbers("ks")) {
        const auto k = static_cast<std::int64_t>(kd);
        if (k < 1 || static_cast<double>(k) != kd) throw SchemaError(r.path() + ".ks", "expected positive integers");
        const OrthogonalSetting set{s, pm, pp, k};
        for (const auto& c : classes) {
            const auto row = ortho_class(c, set, eta_scale, points);
            t.add({k, c, row.theory, row.oracle, std::fabs(row.theory - row.oracle) / row.theory});
        }
    }
    return {t};
}

SimConfig read_sim(const Reader& r, std::uint64_t seed) {
    r.only({"n", "d", "alpha", "sigma", "lambda_star", "psi", "k", "eta", "lambda_min", "replications", "beta_mode",
            "ridge_grid"});
    SimConfig cfg;
    cfg.n = r.integer("n", cfg.n);
    cfg.d = r.integer("d", cfg.d);
    cfg.alpha = r.number("alpha", cfg.alpha);
    cfg.psi = r.number("psi", cfg.psi);
    if (r.has("sigma") && r.has("lambda_star")) throw SchemaError(r.path(), "give at most one of 'sigma' or 'lambda_star'");
    if (r.has("lambda_star"))
        cfg.sigma = std::sqrt(r.number("lambda_star") * cfg.psi * static_cast<double>(cfg.n) / static_cast<double>(cfg.d));
    else
        cfg.sigma = r.number("sigma", cfg.sigma);
    cfg.k = r.integer("k", cfg.k);
    cfg.eta = r.number("eta", cfg.eta);
    cfg.lambda_min = r.number("lambda_min", cfg.lambda_min);
    cfg.replications = r.integer("replications", cfg.replications);
    const auto beta = r.text("beta_mode", "fixed_ones");
    if (beta == "fixed_ones")
        cfg.beta_mode = BetaMode::FixedOnes;
    else if (beta == "random_isotropic")
        cfg.beta_mode = BetaMode::RandomIsotropic;
    else
        throw SchemaError(r.path() + ".beta_mode", "expected \"fixed_ones\" or \"random_isotropic\"");
    const auto grid = r.text("ridge_grid", "bracket");
    if (grid == "bracket")
        cfg.ridge_grid = RidgeGridMode::Bracket;
    else if (grid == "uniform")
        cfg.ridge_grid = RidgeGridMode::Uniform;
    else
        throw SchemaError(r.path() + ".ridge_grid", "expected \"bracket\" or \"uniform\"");
    cfg.seed = seed;
    return cfg;
}

std::vector<Table> cmd_simulate(const Reader& r, std::uint64_t seed) {
    const auto cfg = read_sim(r, seed);
    const auto res = run_sim(cfg);
    Table t;
    t.columns = {"estimator_id", "kind", "parameter", "mean_excess", "std_error", "finite"};
    for (const auto& row : res.rows)
        t.add({row.estimator_id, std::string(row.is_gd ? "gd" : "ridge"), row.parameter, row.mean_excess, row.std_error,
               row.finite});
    Table s;
    s.suffix = "_summary";
    s.columns = {"lambda_star", "best_gd", "best_ridge", "ratio"};
    s.add({res.lambda_star, res.best_gd >= 0 ? res.rows[static_cast<std::size_t>(res.best_gd)].estimator_id : std::string("none"),
           res.best_ridge >= 0 ? res.rows[static_cast<std::size_t>(res.best_ridge)].estimator_id : std::string("none"),
           res.ratio});
    return {t, s};
}

// ---- figures -------------------------------------------------------------------

struct RatioPoint {
    double gd;
    double ridge;
    double ratio;
};

RatioPoint gd_vs_ridge(const Spectrum& spec, double lam, double lm_factor, double ridge_lm, std::int64_t k) {
    const auto p = with_lambda_star(ProblemParams{spec.dim(), spec.dim(), 1.0, 1.0}, lam);
    const double eta = default_gd_step(k, lm_factor * lam);
    const auto ridge = ridge_uniform(ridge_lm < 0 ? lm_factor * lam : ridge_lm, k);
    const double g = class_excess(gd_class(eta, k), spec, p).best_excess;
    const double rr = class_excess(ridge, spec, p).best_excess;
    return {g, rr, rr > 1e-300 ? g / rr : std::numeric_limits<double>::infinity()};
}

std::vector<Table> fig1_left(const Reader& r) {
    r.only({"name", "alpha", "r", "k", "points", "lambda_star_min", "lambda_star_max", "lambda_min_factor", "ridge_lambda_min"});
    const auto rank = positive(r, "r", 1'000'000);
    const auto spec = Spectrum::power_law(r.number("alpha"), rank, rank);
    const auto k = r.integer("k");
    Table t;
    t.columns = {"lambda_star", "gd_excess", "ridge_excess", "ratio"};
    for (double lam : log_space(r.number("lambda_star_min"), r.number("lambda_star_max"), positive(r, "points", 100))) {
        const auto pt = gd_vs_ridge(spec, lam, r.number("lambda_min_factor"), r.number("ridge_lambda_min"), k);
        t.add({lam, pt.gd, pt.ridge, pt.ratio});
    }
    t.plots.push_back({"GD / ridge excess ratio vs lambda*", "lambda_star", {{"ratio", "ratio"}}, true, true});
    return {t};
}

std::vector<Table> fig1_right(const Reader& r) {
    r.only({"name", "alpha_min", "alpha_max", "points", "lambda_star", "r", "k", "lambda_min_factor", "ridge_lambda_min"});
    const auto rank = positive(r, "r", 1'000'000);
    const auto points = positive(r, "points", 31);
    const double a0 = r.number("alpha_min"), a1 = r.number("alpha_max");
    const double lam = r.number("lambda_star");
    Table t;
    t.columns = {"alpha", "gd_excess", "ridge_excess", "ratio"};
    for (std::int64_t i = 0; i < points; ++i) {
        const double alpha = points == 1 ? a0 : a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(points - 1);
        if (alpha < 0.0) throw SchemaError(r.path() + ".alpha_min", "alpha must be non-negative");
        // alpha = 0 is the flat spectrum s_i = 1
        const auto spec = alpha == 0.0 ? Spectrum::orthogonal(1.0, rank, rank) : Spectrum::power_law(alpha, rank, rank);
        const auto pt = gd_vs_ridge(spec, lam, r.number("lambda_min_factor"), r.number("ridge_lambda_min"), r.integer("k"));
        t.add({alpha, pt.gd, pt.ridge, pt.ratio});
    }
    t.plots.push_back({"GD / ridge excess ratio vs alpha", "alpha", {{"ratio", "ratio"}}, false, true});
    return {t};
}

std::vector<Table> fig2(const Reader& r) {
    r.only({"name", "alpha", "r", "k", "points", "lambda_star_min", "lambda_star_max", "lambda_min_factor", "lower_rank"});
    const double alpha = r.number("alpha");
    const auto rank = positive(r, "r", 1'000'000);
    const auto k = r.integer("k");
    const double factor = r.number("lambda_min_factor");
    const double lower_rank = r.number("lower_rank");
    const auto spec = Spectrum::power_law(alpha, rank, rank);
    const auto unit = BoundConstants::unit();
    Table t;
    t.columns = {"lambda_star", "ratio", "upper_unit", "lower_unit", "upper_preconditions_met", "lower_preconditions_met",
                 "failed_preconditions"};
    for (double lam : log_space(r.number("lambda_star_min"), r.number("lambda_star_max"), positive(r, "points", 100))) {
        const double lm = factor * lam;
        const auto pt = gd_vs_ridge(spec, lam, factor, -1.0, k);
        const auto up = thm_slow_upper(alpha, lam, lm, k, static_cast<double>(rank), unit);
        const auto lo = thm_slow_lower(alpha, lam, lm, k, lower_rank, unit);
        std::string failed = failed_names(up);
        const auto lf = failed_names(lo);
        if (!lf.empty()) failed += (failed.empty() ? "" : ";") + lf;
        t.add({lam, pt.ratio, opt(up.upper), opt(lo.lower), up.preconditions_met(), lo.preconditions_met(), failed});
    }
    t.plots.push_back({"relative sub-optimality and unit-constant bounds", "lambda_star",
                       {{"exact", "ratio"}, {"upper", "upper_unit"}, {"lower", "lower_unit"}}, true, true});
    return {t};
}

std::vector<Table> fig3(const Reader& r, std::uint64_t seed) {
    r.only({"name", "n", "d", "alphas", "points", "replications", "repeats"});
    const auto n = positive(r, "n", 2000), d = positive(r, "d", 200);
    const auto reps = positive(r, "replications", 20), repeats = positive(r, "repeats", 1);
    const auto lams = fig3_lambda_stars(positive(r, "points", 10));
    Table t;
    t.columns = {"alpha", "lambda_star", "ratio_mean", "ratio_sd", "repeats"};
    std::vector<std::string> alpha_cols;
    const auto alphas = r.numbers("alphas");
    Table wide;
    wide.suffix = "_wide";
    wide.columns = {"lambda_star"};
    for (double a : alphas) wide.columns.push_back("ratio_alpha_" + std::to_string(a).substr(0, 4));
    std::vector<std::vector<Cell>> wide_rows(lams.size());
    for (std::size_t i = 0; i < lams.size(); ++i) wide_rows[i].push_back(lams[i]);
    for (double alpha : alphas) {
        for (std::size_t i = 0; i < lams.size(); ++i) {
            std::vector<double> ratios;
            for (std::int64_t rep = 0; rep < repeats; ++rep)
                ratios.push_back(run_sim(fig3_preset(n, d, alpha, lams[i], reps, seed + static_cast<std::uint64_t>(rep))).ratio);
            double mean = 0.0, var = 0.0;
            for (double x : ratios) mean += x;
            mean /= static_cast<double>(ratios.size());
            for (double x : ratios) var += (x - mean) * (x - mean);
            const double sd = ratios.size() > 1 ? std::sqrt(var / static_cast<double>(ratios.size() - 1)) : 0.0;
            t.add({alpha, lams[i], mean, sd, repeats});
            wide_rows[i].push_back(mean);
        }
    }
    for (auto& row : wide_rows) wide.add(std::move(row));
    PlotSpec plot{"estimated relative sub-optimality", "lambda_star", {}, true, true};
    for (std::size_t j = 0; j < alphas.size(); ++j) plot.series.push_back({"alpha=" + std::to_string(alphas[j]).substr(0, 4), wide.columns[j + 1]});
    wide.plots.push_back(plot);
    return {t, wide};
}

std::vector<Table> fig4_like(const Reader& r, bool split) {
    r.only({"name", "s", "psi_minus", "psi_plus", "k_min", "k_max", "points", "psi_points", "eta_scale"});
    const double s = r.number("s"), pm = r.number("psi_minus"), pp = r.number("psi_plus");
    const auto points = positive(r, "psi_points", 100'000);
    const double eta_scale = r.number("eta_scale");
    const auto ks = log_space_int(r.number("k_min"), r.number("k_max"), positive(r, "points", 20));
    const char* kinds[] = {"minimax", "ridge", "gd"};
    std::map<std::string, Table> per;
    Table wide;
    wide.columns = {"k", "minimax_theory", "ridge_theory", "gd_theory", "minimax_oracle", "ridge_oracle", "gd_oracle"};
    for (const char* kind : kinds) {
        per[kind].suffix = std::string("_") + kind;
        per[kind].columns = {"k", "theory", "oracle"};
        per[kind].plots.push_back({std::string(kind) + " minimax excess risk", "k", {{"theory", "theory"}, {"oracle", "oracle"}}, true, true});
    }
    for (auto k : ks) {
        const OrthogonalSetting set{s, pm, pp, k};
        std::vector<OrthoRow> rows;
        for (const char* kind : kinds) {
            rows.push_back(ortho_class(kind, set, eta_scale, points));
            per[kind].add({k, rows.back().theory, rows.back().oracle});
        }
        wide.add({k, rows[0].theory, rows[1].theory, rows[2].theory, rows[0].oracle, rows[1].oracle, rows[2].oracle});
    }
    if (split) return {per["minimax"], per["ridge"], per["gd"]};
    wide.plots.push_back({"theoretical minimax risk by class", "k",
                          {{"optimal grid", "minimax_theory"}, {"ridge", "ridge_theory"}, {"gd", "gd_theory"}}, true, true});
    return {wide};
}

std::vector<Table> cmd_figure(const Reader& r, std::uint64_t seed) {
    const auto name = r.text("name");
    if (name == "fig1_left") return fig1_left(r);
    if (name == "fig1_right") return fig1_right(r);
    if (name == "fig2") return fig2(r);
    if (name == "fig3") return fig3(r, seed);
    if (name == "fig4") return fig4_like(r, true);
    if (name == "fig5_left") return fig4_like(r, false);
    throw SchemaError(r.path() + ".name", "unknown figure '" + name + "'");
}

}  // namespace

std::vector<Table> run_experiment(const Experiment& e) {
    const Reader r(e.params, "params");
    if (e.command == "risk") return cmd_risk(r);
    if (e.command == "compare") return cmd_compare(r);
    if (e.command == "bounds") return cmd_bounds(r);
    if (e.command == "minimax") return cmd_minimax(r);
    if (e.command == "simulate") return cmd_simulate(r, e.seed);
    if (e.command == "figure") return cmd_figure(r, e.seed);
    throw SchemaError("command", "unknown command '" + e.command + "'");
}

bool selftest() {
    int failed = 0;
    auto check = [&](const char* name, bool ok, double value) {
        std::printf("%-40s %s (%.3e)\n", name, ok ? "ok" : "FAILED", value);
        failed += ok ? 0 : 1;
    };
    {
        const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
        check("philox known-answer vector", out[0] == 0x6627e8d5u && out[3] == 0x9b00dbd8u, static_cast<double>(out[0]));
    }
    {
        const OrthogonalSetting set{1.0, 4.0, 4.5, 16};
        const double th = minimax_risk(set);
        const double gap = std::fabs(maxmin_oracle(minimax_class(4.0, 4.5, 1.0, 16), set, 100'000).value - th) / th;
        check("minimax closed form vs oracle (k=16)", gap < 1e-3, gap);
    }
    {
        const double lam = 0.05, eta = 0.3, s = 2.0;
        const double err = std::fabs(std::exp(t_star(s, eta, lam) * std::log1p(-eta * s)) - lam / (lam + s)) / (lam / (lam + s));
        check("t* defining identity", err < 1e-12, err);
    }
    {
        const auto spec = Spectrum::power_law(0.5, 1000, 1000);
        const ProblemParams p{1000, 1000, 0.5, 1.0};
        const double ex = excess_risk(Ridge{p.lambda_star()}, spec, p).excess;
        check("optimal ridge has zero excess", std::fabs(ex) < 1e-14, ex);
    }
    {
        const auto phi = minimax_phi(1.0, 10.0, 1.0, 8);
        const auto terms = kp1_terms(phi, {1.0, 1.0, 10.0, 8});
        const auto [lo, hi] = std::minmax_element(terms.begin(), terms.end());
        const double spread = (*hi - *lo) / *hi;
        check("minimax grid equalizes k+1 terms", spread < 1e-10, spread);
    }
    std::printf("%s\n", failed == 0 ? "selftest passed" : "selftest FAILED");
    return failed == 0;
}

std::string columns_help(const std::string& command) {
    static const std::map<std::string, std::string> docs = {
        {"risk", "CSV columns: shrinker, kind, lambda_star, total, bayes, excess, step_flagged"},
        {"compare", "CSV columns: lambda_star, class_a, class_b, best_a_index, best_a_excess, best_b_index, best_b_excess, ratio"},
        {"bounds", "CSV columns: proposition, lambda_star, exact, lower, upper, preconditions_met, lower_valid, upper_valid, "
                   "failed_preconditions"},
        {"minimax", "CSV columns: k, class, theory, oracle, relative_gap"},
        {"simulate", "CSV columns: estimator_id, kind, parameter, mean_excess, std_error, finite\n"
                     "<out>_summary.csv: lambda_star, best_gd, best_ridge, ratio"},
        {"figure", "fig1_left: lambda_star, gd_excess, ridge_excess, ratio\n"
                   "fig1_right: alpha, gd_excess, ridge_excess, ratio\n"
                   "fig2: lambda_star, ratio, upper_unit, lower_unit, upper_preconditions_met, lower_preconditions_met, "
                   "failed_preconditions\n"
                   "fig3: alpha, lambda_star, ratio_mean, ratio_sd, repeats (+ <out>_wide.csv: lambda_star, one ratio column per alpha)\n"
                   "fig4: <out>_minimax.csv, <out>_ridge.csv, <out>_gd.csv with k, theory, oracle\n"
                   "fig5_left: k, minimax_theory, ridge_theory, gd_theory, minimax_oracle, ridge_oracle, gd_oracle"},
    };
    const auto it = docs.find(command);
    return it == docs.end() ? std::string() : it->second;
}

}  // namespace cli
